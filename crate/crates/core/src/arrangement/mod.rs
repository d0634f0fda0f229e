//! Incidence structures of line arrangements and their combinatorics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::projective::{incident, meet, ProjLine, ProjPoint, Rat};

pub(crate) mod generators;

pub use generators::{
    gen_a1_15, gen_a1_6, gen_a1_9, gen_ceva, gen_generic, gen_klein, gen_pencil, gen_quasipencil,
    gen_star, gen_wiman,
};

/// A configuration point together with the arrangement lines through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigPoint {
    on_lines: Vec<usize>,
    coords: Option<ProjPoint>,
}

impl ConfigPoint {
    /// Sorted ids of the lines through this point.
    pub fn lines(&self) -> &[usize] {
        &self.on_lines
    }

    pub fn multiplicity(&self) -> usize {
        self.on_lines.len()
    }

    pub fn coords(&self) -> Option<&ProjPoint> {
        self.coords.as_ref()
    }

    pub fn on_line(&self, line: usize) -> bool {
        self.on_lines.binary_search(&line).is_ok()
    }
}

/// A line that is not part of the arrangement but is declared to pass
/// through the listed configuration points.
///
/// Nothing here checks that such a line exists geometrically; that is the
/// data provider's claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualLine {
    name: String,
    points: Vec<usize>,
}

impl VirtualLine {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    /// Built from explicit rational lines; points carry coordinates.
    Coordinates(Vec<ProjLine>),
    /// Pure incidence data.
    Abstract,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    pub name: Option<String>,
    pub source: Option<String>,
}

/// Lines `0..d`, the configuration points where at least two of them meet,
/// and which lines pass through which point.
///
/// Points are kept sorted by their line sets, so the point id is its index
/// and two structures with the same incidences compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    num_lines: usize,
    points: Vec<ConfigPoint>,
    virtual_lines: Vec<VirtualLine>,
    origin: Origin,
    meta: Metadata,
}

/// Per-line point counts `r_j` and their maximum `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCounts {
    pub counts: Vec<usize>,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `sum_p C(m_p, 2)` differs from `C(d, 2)`.
    PairCount { expected: usize, found: usize },
    /// `sum_j r_j` differs from `sum_p m_p`.
    IncidenceTotal { by_lines: usize, by_points: usize },
    /// Two lines share more than one configuration point.
    SharedPoints {
        first: usize,
        second: usize,
        shared: usize,
    },
    /// `sum over points on the line of (m_p - 1)` differs from `d - 1`.
    LineIdentity {
        line: usize,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PairCount { expected, found } => {
                write!(
                    f,
                    "pair count: sum C(m_p,2) = {found}, expected C(d,2) = {expected}"
                )
            }
            Violation::IncidenceTotal {
                by_lines,
                by_points,
            } => {
                write!(
                    f,
                    "incidence total: sum r_j = {by_lines}, sum m_p = {by_points}"
                )
            }
            Violation::SharedPoints {
                first,
                second,
                shared,
            } => {
                write!(f, "lines {first} and {second} share {shared} points")
            }
            Violation::LineIdentity {
                line,
                expected,
                found,
            } => {
                write!(
                    f,
                    "line {line}: sum (m_p - 1) = {found}, expected d - 1 = {expected}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl IncidenceStructure {
    /// Builds an abstract structure from the line sets of its points.
    ///
    /// Virtual lines refer to points by their position in `points`; they are
    /// renumbered along with the canonical point order.
    pub fn from_incidence(
        num_lines: usize,
        points: Vec<Vec<usize>>,
        virtual_lines: Vec<(String, Vec<usize>)>,
    ) -> Result<Self> {
        if num_lines == 0 {
            return Err(Error::InvalidStructure("no lines".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidStructure("no configuration points".into()));
        }
        let mut tagged = Vec::with_capacity(points.len());
        for (id, lines) in points.into_iter().enumerate() {
            let set: BTreeSet<usize> = lines.iter().copied().collect();
            if set.len() != lines.len() {
                return Err(Error::InvalidStructure(format!(
                    "point {id} repeats a line id"
                )));
            }
            if let Some(&bad) = set.iter().find(|&&l| l >= num_lines) {
                return Err(Error::InvalidStructure(format!(
                    "point {id} refers to line {bad} but there are only {num_lines} lines"
                )));
            }
            if set.len() < 2 {
                return Err(Error::InvalidStructure(format!(
                    "point {id} lies on {} line(s); configuration points need at least 2",
                    set.len()
                )));
            }
            tagged.push((id, set.into_iter().collect::<Vec<_>>()));
        }
        tagged.sort_by(|a, b| a.1.cmp(&b.1));
        let mut renumber = vec![0; tagged.len()];
        for (new, (old, _)) in tagged.iter().enumerate() {
            renumber[*old] = new;
        }
        let points = tagged
            .into_iter()
            .map(|(_, on_lines)| ConfigPoint {
                on_lines,
                coords: None,
            })
            .collect::<Vec<_>>();
        let virtual_lines = virtual_lines
            .into_iter()
            .map(|(name, pts)| {
                let mut mapped = Vec::with_capacity(pts.len());
                for p in pts {
                    let &id = renumber.get(p).ok_or_else(|| {
                        Error::InvalidStructure(format!(
                            "virtual line {name} refers to unknown point {p}"
                        ))
                    })?;
                    mapped.push(id);
                }
                mapped.sort_unstable();
                mapped.dedup();
                Ok(VirtualLine {
                    name,
                    points: mapped,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            num_lines,
            points,
            virtual_lines,
            origin: Origin::Abstract,
            meta: Metadata::default(),
        })
    }

    pub fn with_metadata(mut self, meta: Metadata) -> Self {
        self.meta = meta;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.meta.name = Some(name.into());
        self
    }

    /// Adds virtual lines to an existing structure.
    pub fn with_virtual_lines(mut self, lines: Vec<(String, Vec<usize>)>) -> Result<Self> {
        for (name, mut pts) in lines {
            if let Some(&bad) = pts.iter().find(|&&p| p >= self.points.len()) {
                return Err(Error::InvalidStructure(format!(
                    "virtual line {name} refers to unknown point {bad}"
                )));
            }
            pts.sort_unstable();
            pts.dedup();
            self.virtual_lines.push(VirtualLine { name, points: pts });
        }
        Ok(self)
    }

    pub fn num_lines(&self) -> usize {
        self.num_lines
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ConfigPoint] {
        &self.points
    }

    pub fn point(&self, id: usize) -> Option<&ConfigPoint> {
        self.points.get(id)
    }

    pub fn virtual_lines(&self) -> &[VirtualLine] {
        &self.virtual_lines
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// The rational lines, when the structure was built from coordinates.
    pub fn coordinate_lines(&self) -> Option<&[ProjLine]> {
        match &self.origin {
            Origin::Coordinates(lines) => Some(lines),
            Origin::Abstract => None,
        }
    }

    pub fn metadata(&self) -> &Metadata {
        &self.meta
    }

    pub fn name(&self) -> Option<&str> {
        self.meta.name.as_deref()
    }

    pub fn points_on_line(&self, line: usize) -> Vec<usize> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.on_line(line))
            .map(|(id, _)| id)
            .collect()
    }

    /// Census `k -> t_k`, the number of points of multiplicity `k`.
    pub fn tk_vector(&self) -> BTreeMap<usize, usize> {
        let mut tk = BTreeMap::new();
        for p in &self.points {
            *tk.entry(p.multiplicity()).or_insert(0) += 1;
        }
        tk
    }

    pub fn line_point_counts(&self) -> LineCounts {
        let mut counts = vec![0; self.num_lines];
        for p in &self.points {
            for &l in &p.on_lines {
                counts[l] += 1;
            }
        }
        let max = counts.iter().copied().max().unwrap_or(0);
        LineCounts { counts, max }
    }

    /// Checks `d - 1 = sum_{p on l_j} (m_p - 1)` on every line.
    pub fn check_line_identity(&self) -> bool {
        self.line_identity_sums()
            .iter()
            .all(|&s| s + 1 == self.num_lines)
    }

    fn line_identity_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.num_lines];
        for p in &self.points {
            for &l in &p.on_lines {
                sums[l] += p.multiplicity() - 1;
            }
        }
        sums
    }

    /// `Some(n)` when there are `3n` lines and each carries exactly `n + 1`
    /// configuration points.
    pub fn hirzebruch_property(&self) -> Option<usize> {
        if !self.num_lines.is_multiple_of(3) {
            return None;
        }
        let n = self.num_lines / 3;
        self.line_point_counts()
            .counts
            .iter()
            .all(|&r| r == n + 1)
            .then_some(n)
    }

    pub fn is_pencil(&self) -> bool {
        self.points.len() == 1 && self.points[0].multiplicity() == self.num_lines
    }

    /// `max_j r_j / d`.
    pub fn max_r_ratio(&self) -> Result<Rat> {
        if self.is_pencil() {
            return Err(Error::IsPencil);
        }
        let max = self.line_point_counts().max;
        Ok(Rat::new(max.into(), self.num_lines.into()))
    }

    pub fn validate_counts(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let d = self.num_lines;

        let found = self.points.iter().map(|p| choose2(p.multiplicity())).sum();
        if found != choose2(d) {
            violations.push(Violation::PairCount {
                expected: choose2(d),
                found,
            });
        }

        let by_points = self.points.iter().map(|p| p.multiplicity()).sum();
        let by_lines = (0..d).map(|l| self.points_on_line(l).len()).sum();
        if by_lines != by_points {
            violations.push(Violation::IncidenceTotal {
                by_lines,
                by_points,
            });
        }

        let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for p in &self.points {
            for (i, &a) in p.on_lines.iter().enumerate() {
                for &b in &p.on_lines[i + 1..] {
                    *shared.entry((a, b)).or_insert(0) += 1;
                }
            }
        }
        for (&(first, second), &count) in &shared {
            if count > 1 {
                violations.push(Violation::SharedPoints {
                    first,
                    second,
                    shared: count,
                });
            }
        }

        for (line, found) in self.line_identity_sums().into_iter().enumerate() {
            if found + 1 != d {
                violations.push(Violation::LineIdentity {
                    line,
                    expected: d - 1,
                    found,
                });
            }
        }
        ValidationReport { violations }
    }
}

/// All intersection points of the given lines, grouped by equality.
pub fn singular_locus(lines: &[ProjLine]) -> Result<IncidenceStructure> {
    if lines.len() < 2 {
        return Err(Error::BadParameter(
            "an arrangement needs at least 2 lines".into(),
        ));
    }
    for (i, a) in lines.iter().enumerate() {
        if let Some(j) = lines[i + 1..].iter().position(|b| a == b) {
            return Err(Error::DuplicateLine {
                first: i,
                second: i + 1 + j,
            });
        }
    }
    let mut meets = BTreeSet::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            meets.insert(meet(a, b)?);
        }
    }
    let mut points: Vec<ConfigPoint> = meets
        .into_iter()
        .map(|p| {
            let on_lines = lines
                .iter()
                .enumerate()
                .filter(|(_, l)| incident(&p, l))
                .map(|(j, _)| j)
                .collect();
            ConfigPoint {
                on_lines,
                coords: Some(p),
            }
        })
        .collect();
    points.sort_by(|a, b| a.on_lines.cmp(&b.on_lines));
    Ok(IncidenceStructure {
        num_lines: lines.len(),
        points,
        virtual_lines: Vec::new(),
        origin: Origin::Coordinates(lines.to_vec()),
        meta: Metadata::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_ints(a, b, c).unwrap()
    }

    #[test]
    fn coordinate_triangle() {
        let s = singular_locus(&[ln(1, 0, 0), ln(0, 1, 0), ln(0, 0, 1)]).unwrap();
        assert_eq!(s.num_points(), 3);
        assert!(s.points().iter().all(|p| p.multiplicity() == 2));
        assert_eq!(s.tk_vector(), BTreeMap::from([(2, 3)]));
    }

    #[test]
    fn three_concurrent_lines() {
        let s = singular_locus(&[ln(1, 0, 0), ln(0, 1, 0), ln(1, 1, 0)]).unwrap();
        assert_eq!(s.num_points(), 1);
        assert_eq!(s.points()[0].multiplicity(), 3);
        assert_eq!(
            s.points()[0].coords(),
            Some(&ProjPoint::from_ints(0, 0, 1).unwrap())
        );
        assert!(s.is_pencil());
        assert_eq!(s.max_r_ratio(), Err(Error::IsPencil));
        assert!(s.check_line_identity());
    }

    #[test]
    fn duplicate_lines_rejected() {
        let err = singular_locus(&[ln(1, 0, 0), ln(0, 1, 0), ln(2, 0, 0)]).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateLine {
                first: 0,
                second: 2
            }
        );
        assert!(singular_locus(&[ln(1, 0, 0)]).is_err());
    }

    #[test]
    fn two_lines_sharing_two_points_is_reported() {
        let s =
            IncidenceStructure::from_incidence(3, vec![vec![0, 1], vec![0, 1, 2]], vec![]).unwrap();
        let report = s.validate_counts();
        assert!(report.violations.contains(&Violation::SharedPoints {
            first: 0,
            second: 1,
            shared: 2
        }));
        assert!(!report.is_ok());
    }

    #[test]
    fn incidence_constructor_rejects_bad_points() {
        assert!(IncidenceStructure::from_incidence(3, vec![vec![0]], vec![]).is_err());
        assert!(IncidenceStructure::from_incidence(3, vec![vec![0, 3]], vec![]).is_err());
        assert!(IncidenceStructure::from_incidence(3, vec![vec![0, 0, 1]], vec![]).is_err());
        assert!(IncidenceStructure::from_incidence(3, vec![], vec![]).is_err());
        assert!(IncidenceStructure::from_incidence(
            3,
            vec![vec![0, 1]],
            vec![("L".into(), vec![4])]
        )
        .is_err());
    }

    #[test]
    fn canonical_order_renumbers_virtual_lines() {
        let s = IncidenceStructure::from_incidence(
            3,
            vec![vec![1, 2], vec![0, 2], vec![0, 1]],
            vec![("V".into(), vec![0])],
        )
        .unwrap();
        assert_eq!(s.points()[0].lines(), &[0, 1]);
        // old point 0 ({1,2}) is now last
        assert_eq!(s.virtual_lines()[0].points(), &[2]);
        assert!(s.validate_counts().is_ok());
    }
}
