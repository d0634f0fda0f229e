//! Exact minimum line cover of the configuration points.
//!
//! Branch and bound over the candidate pool in index order: covers are
//! enumerated as increasing index sequences, sizes are tried from the
//! counting bound upward, and a branch is cut when
//! `ceil(uncovered / best remaining gain)` exceeds the slots left. The first
//! cover found is therefore optimal and lexicographically least.

use std::collections::HashSet;

use super::certificate::{ComponentSource, DivisorComponent, LineDivisor};
use super::DEFAULT_NODE_LIMIT;
use crate::arrangement::IncidenceStructure;
use crate::error::{Error, Result};
use crate::projective::{incident, line_through, ProjLine, ProjPoint};

/// A line available to the cover search, with the points it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCandidate {
    pub source: ComponentSource,
    pub points: Vec<usize>,
}

/// The pool searched by [`min_line_cover`], deduplicated by point set with
/// the first occurrence kept: arrangement lines, virtual lines, and for
/// coordinate-backed structures the joins of point pairs followed by one
/// line through each single point.
pub fn cover_candidates(s: &IncidenceStructure) -> Vec<CoverCandidate> {
    line_pool(s, true)
}

pub(crate) fn line_pool(s: &IncidenceStructure, singletons: bool) -> Vec<CoverCandidate> {
    let mut pool = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut push = |pool: &mut Vec<CoverCandidate>, source, points: Vec<usize>| {
        if seen.insert(points.clone()) {
            pool.push(CoverCandidate { source, points });
        }
    };
    for j in 0..s.num_lines() {
        push(
            &mut pool,
            ComponentSource::ArrangementLine(j),
            s.points_on_line(j),
        );
    }
    for v in s.virtual_lines() {
        push(
            &mut pool,
            ComponentSource::VirtualLine(v.name().to_string()),
            v.points().to_vec(),
        );
    }
    let Some(coords) = point_coords(s) else {
        return pool;
    };
    let n = coords.len();
    let arrangement: HashSet<&ProjLine> = s.coordinate_lines().unwrap_or(&[]).iter().collect();
    let mut joined = vec![false; n * n];
    for i in 0..n {
        for j in i + 1..n {
            if joined[i * n + j] {
                continue;
            }
            let line =
                line_through(&coords[i], &coords[j]).expect("configuration points are distinct");
            let on: Vec<usize> = (0..n).filter(|&p| incident(&coords[p], &line)).collect();
            for (x, &a) in on.iter().enumerate() {
                for &b in &on[x + 1..] {
                    joined[a * n + b] = true;
                }
            }
            if !arrangement.contains(&line) {
                push(&mut pool, ComponentSource::CoordinateLine(line), on);
            }
        }
    }
    if singletons {
        for (p, point) in coords.iter().enumerate() {
            let line = isolating_line(point, &coords);
            push(&mut pool, ComponentSource::CoordinateLine(line), vec![p]);
        }
    }
    pool
}

fn point_coords(s: &IncidenceStructure) -> Option<Vec<ProjPoint>> {
    s.points().iter().map(|p| p.coords().cloned()).collect()
}

/// A line through `p` missing every other point of `all`. The helper points
/// `[1 : t : t^2 + 7]` lie on a conic, so each line through `p` holds at most
/// two of them and the loop ends after finitely many steps.
fn isolating_line(p: &ProjPoint, all: &[ProjPoint]) -> ProjLine {
    (0i64..)
        .filter_map(|t| {
            let q = ProjPoint::from_ints(1, t, t * t + 7).ok()?;
            line_through(p, &q).ok()
        })
        .find(|l| all.iter().filter(|q| incident(q, l)).count() == 1)
        .expect("an isolating line always exists")
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn overlap(&self, other: &Bits) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }
}

/// Repeatedly takes the candidate covering the most uncovered points
/// (lowest index on ties). Returns candidate indices.
pub fn greedy_cover(s: &IncidenceStructure) -> Vec<usize> {
    let pool = cover_candidates(s);
    let sets = to_bits(&pool, s.num_points());
    greedy(&sets, s.num_points())
}

fn to_bits(pool: &[CoverCandidate], n: usize) -> Vec<Bits> {
    pool.iter()
        .map(|c| {
            let mut b = Bits::empty(n);
            c.points.iter().for_each(|&p| b.set(p));
            b
        })
        .collect()
}

fn greedy(sets: &[Bits], n: usize) -> Vec<usize> {
    let mut uncovered = Bits::full(n);
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (best, gain) = sets
            .iter()
            .enumerate()
            .map(|(i, b)| (i, b.overlap(&uncovered)))
            .fold((usize::MAX, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        assert!(gain > 0, "candidate pool does not cover every point");
        chosen.push(best);
        uncovered = uncovered.minus(&sets[best]);
    }
    chosen
}

struct Search<'a> {
    sets: &'a [Bits],
    size: usize,
    chosen: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    fn dfs(&mut self, start: usize, uncovered: &Bits) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Timeout(self.limit));
        }
        let Some(first) = uncovered.first() else {
            return Ok(true);
        };
        let slots = self.size - self.chosen.len();
        if slots == 0 {
            return Ok(false);
        }
        // the next pick must come no later than the last candidate covering `first`
        let Some(last) = (start..self.sets.len())
            .rev()
            .find(|&i| self.sets[i].contains(first))
        else {
            return Ok(false);
        };
        let best_gain = self.sets[start..]
            .iter()
            .map(|b| b.overlap(uncovered))
            .max()
            .unwrap_or(0);
        if best_gain * slots < uncovered.count() {
            return Ok(false);
        }
        for i in start..=last {
            if self.sets[i].overlap(uncovered) == 0 {
                continue;
            }
            self.chosen.push(i);
            if self.dfs(i + 1, &uncovered.minus(&self.sets[i]))? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// Minimum-cardinality cover with the default node limit.
pub fn min_line_cover(s: &IncidenceStructure, budget: usize) -> Result<Option<LineDivisor>> {
    min_line_cover_with_limit(s, budget, DEFAULT_NODE_LIMIT)
}

/// Minimum-cardinality cover of all configuration points by pool lines.
///
/// Returns `Ok(None)` when every cover needs more than `budget` lines and
/// `Err(Timeout)` when the search visits more than `node_limit` nodes.
pub fn min_line_cover_with_limit(
    s: &IncidenceStructure,
    budget: usize,
    node_limit: u64,
) -> Result<Option<LineDivisor>> {
    let pool = cover_candidates(s);
    let n = s.num_points();
    let sets = to_bits(&pool, n);
    let incumbent = greedy(&sets, n).len();
    let widest = sets.iter().map(Bits::count).max().unwrap_or(1);
    let lower = n.div_ceil(widest);
    let mut search = Search {
        sets: &sets,
        size: 0,
        chosen: Vec::new(),
        nodes: 0,
        limit: node_limit,
    };
    let full = Bits::full(n);
    for size in lower..=incumbent.min(budget) {
        search.size = size;
        search.chosen.clear();
        if search.dfs(0, &full)? {
            let components = search
                .chosen
                .iter()
                .map(|&i| DivisorComponent::line(pool[i].source.clone(), &pool[i].points))
                .collect();
            return LineDivisor::new(components).map(Some);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{gen_a1_15, gen_a1_6, gen_a1_9, gen_pencil};

    #[test]
    fn square_needs_four_lines() {
        let s = gen_a1_9().unwrap();
        let cover = min_line_cover(&s, 13).unwrap().unwrap();
        assert_eq!(cover.components().len(), 4);
        assert_eq!(min_line_cover(&s, 3).unwrap(), None);
    }

    #[test]
    fn pentagon_needs_six_lines() {
        let s = gen_a1_15().unwrap();
        let cover = min_line_cover(&s, 31).unwrap().unwrap();
        assert_eq!(cover.components().len(), 6);
    }

    #[test]
    fn pencil_is_covered_by_one_line() {
        let s = gen_pencil(5).unwrap();
        let cover = min_line_cover(&s, 1).unwrap().unwrap();
        assert_eq!(
            cover.components()[0].source,
            ComponentSource::ArrangementLine(0)
        );
    }

    #[test]
    fn node_limit_reports_timeout() {
        let s = gen_a1_9().unwrap();
        assert_eq!(min_line_cover_with_limit(&s, 13, 1), Err(Error::Timeout(1)));
    }

    #[test]
    fn pool_contents_for_quadrilateral() {
        let s = gen_a1_6().unwrap();
        let pool = cover_candidates(&s);
        // 6 arrangement lines, 3 joins of diagonal points, 12 other joins
        // collapse onto arrangement lines, then 7 singleton lines
        let joins = pool
            .iter()
            .filter(|c| {
                matches!(c.source, ComponentSource::CoordinateLine(_)) && c.points.len() == 2
            })
            .count();
        assert_eq!(joins, 3);
        assert_eq!(pool.len(), 6 + 3 + 7);
        assert!(pool
            .iter()
            .filter(|c| c.points.len() == 1)
            .all(|c| matches!(c.source, ComponentSource::CoordinateLine(_))));
    }

    #[test]
    fn greedy_is_a_cover() {
        let s = gen_a1_15().unwrap();
        let pool = cover_candidates(&s);
        let mut covered = vec![false; s.num_points()];
        for i in greedy_cover(&s) {
            pool[i].points.iter().for_each(|&p| covered[p] = true);
        }
        assert!(covered.into_iter().all(|c| c));
    }
}
