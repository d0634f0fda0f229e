//! Necessary conditions on an irreducible plane curve of degree `d` with
//! singular points of multiplicities `m_1 >= ... >= m_s >= 2`.
//!
//! Every check is exact: integer inequalities are cleared of denominators and
//! the Milnor-number check runs over the rationals. Strict and non-strict
//! comparisons follow the printed statements.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::projective::{fmt_rat, Rat, SqrtRat};

/// Degree, multiplicities and optional Milnor numbers and gonality bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveSingData {
    degree: u32,
    mults: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    milnor: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gonality_bound: Option<u32>,
}

/// Presets for the two simplest singularities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    /// Multiplicity 2, Milnor number 1.
    Node,
    /// Multiplicity 2, Milnor number 2.
    Cusp,
}

impl Singularity {
    pub fn multiplicity(self) -> u32 {
        2
    }

    pub fn milnor(self) -> u64 {
        match self {
            Singularity::Node => 1,
            Singularity::Cusp => 2,
        }
    }
}

impl CurveSingData {
    pub fn new(degree: u32, mults: Vec<u32>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::BadParameter("degree must be positive".into()));
        }
        if let Some(&m) = mults.iter().find(|&&m| m < 2) {
            return Err(Error::BadParameter(format!("multiplicity {m} is below 2")));
        }
        if mults.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadParameter(
                "multiplicities must be weakly decreasing".into(),
            ));
        }
        if mults.first().is_some_and(|&m| m > degree) {
            return Err(Error::BadParameter(format!(
                "multiplicity {} exceeds the degree {degree}",
                mults[0]
            )));
        }
        Ok(Self {
            degree,
            mults,
            milnor: None,
            gonality_bound: None,
        })
    }

    /// Milnor numbers, one per singular point, each at least `(m - 1)^2`.
    pub fn with_milnor(mut self, milnor: Vec<u64>) -> Result<Self> {
        if milnor.len() != self.mults.len() {
            return Err(Error::BadParameter(format!(
                "{} Milnor numbers for {} singular points",
                milnor.len(),
                self.mults.len()
            )));
        }
        for (&mu, &m) in milnor.iter().zip(&self.mults) {
            let floor = (m as u64 - 1).pow(2);
            if mu < floor {
                return Err(Error::BadParameter(format!(
                    "Milnor number {mu} below (m-1)^2 = {floor} for m = {m}"
                )));
            }
        }
        self.milnor = Some(milnor);
        Ok(self)
    }

    pub fn with_gonality_bound(mut self, gon: u32) -> Result<Self> {
        if gon == 0 {
            return Err(Error::BadParameter(
                "gonality bound must be positive".into(),
            ));
        }
        self.gonality_bound = Some(gon);
        Ok(self)
    }

    /// A curve whose singular points are all nodes or cusps.
    pub fn from_singularities(degree: u32, sings: &[Singularity]) -> Result<Self> {
        let mults = sings.iter().map(|s| s.multiplicity()).collect();
        Self::new(degree, mults)?.with_milnor(sings.iter().map(|s| s.milnor()).collect())
    }

    /// Degree `d` with `(d-1)(d-2)/2` nodes.
    pub fn severi(degree: u32) -> Result<Self> {
        if degree < 3 {
            return Err(Error::BadParameter(format!(
                "a nodal curve of degree {degree} has no nodes"
            )));
        }
        let delta = ((degree - 1) * (degree - 2) / 2) as usize;
        Self::from_singularities(degree, &vec![Singularity::Node; delta])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn milnor(&self) -> Option<&[u64]> {
        self.milnor.as_deref()
    }

    pub fn gonality_bound(&self) -> Option<u32> {
        self.gonality_bound
    }

    /// `s`, the number of singular points.
    pub fn num_points(&self) -> usize {
        self.mults.len()
    }

    fn d(&self) -> i128 {
        self.degree as i128
    }

    fn sum(&self, f: impl Fn(i128) -> i128) -> i128 {
        self.mults.iter().map(|&m| f(m as i128)).sum()
    }
}

/// The gonality bound used by the checks: the supplied bound, else `d - m_1`,
/// else `d`.
pub fn effective_gonality(c: &CurveSingData) -> u32 {
    match (c.gonality_bound, c.mults.first()) {
        (Some(g), _) => g,
        (None, Some(&m1)) => c.degree - m1,
        (None, None) => c.degree,
    }
}

fn need_degree(c: &CurveSingData, min: u32) -> Result<()> {
    if c.degree < min {
        return Err(Error::BadParameter(format!(
            "check needs degree >= {min}, got {}",
            c.degree
        )));
    }
    Ok(())
}

/// `d^2 - sum m^2 > 3/2 (d - sum m)`.
pub fn check_osz(c: &CurveSingData) -> Result<bool> {
    need_degree(c, 4)?;
    let d = c.d();
    Ok(2 * (d * d - c.sum(|m| m * m)) > 3 * (d - c.sum(|m| m)))
}

/// `sum (2 + 1/m) mu <= 2d^2 - 3d`.
pub fn check_osz_milnor(c: &CurveSingData) -> Result<bool> {
    let milnor = c.milnor.as_ref().ok_or(Error::MissingMilnor)?;
    need_degree(c, 4)?;
    let lhs: Rat = c
        .mults
        .iter()
        .zip(milnor)
        .map(|(&m, &mu)| {
            (Rat::from_integer(2.into()) + Rat::new(1.into(), m.into()))
                * Rat::from_integer(mu.into())
        })
        .sum();
    let d = c.d();
    Ok(lhs <= Rat::from_integer((2 * d * d - 3 * d).into()))
}

/// `d^2 - d >= sum m (m - 1)`.
pub fn check_bezout_mult(c: &CurveSingData) -> bool {
    let d = c.d();
    d * d - d >= c.sum(|m| m * (m - 1))
}

/// `d^2 > sum m (m - 3/2) + 3/2 gon`.
pub fn check_elx1(c: &CurveSingData) -> Result<bool> {
    need_degree(c, 3)?;
    let d = c.d();
    let gon = effective_gonality(c) as i128;
    Ok(2 * d * d > c.sum(|m| m * (2 * m - 3)) + 3 * gon)
}

/// `d^2 >= sum m (m - 1) + gon`.
pub fn check_elx2(c: &CurveSingData) -> Result<bool> {
    need_degree(c, 3)?;
    let d = c.d();
    Ok(d * d >= c.sum(|m| m * (m - 1)) + effective_gonality(c) as i128)
}

/// `d^2 >= sum_{i >= 2} m_i (m_i - 1) + m_1^2 + gon`.
pub fn check_elx2_improved(c: &CurveSingData) -> Result<bool> {
    let Some(&m1) = c.mults.first() else {
        return Err(Error::BadParameter(
            "check needs at least one singular point".into(),
        ));
    };
    let d = c.d();
    let m1 = m1 as i128;
    let rest = c.sum(|m| m * (m - 1)) - m1 * (m1 - 1);
    Ok(d * d >= rest + m1 * m1 + effective_gonality(c) as i128)
}

/// `d^2 >= m_o + sum (m - 1)^2 + 2 (gon - 1)` with `o` the point at
/// `o_index`, and with Milnor numbers also `(d - 1)^2 >= m_o - 1 + sum mu`.
pub fn check_huh(c: &CurveSingData, o_index: usize) -> Result<bool> {
    need_degree(c, 3)?;
    let Some(&mo) = c.mults.get(o_index) else {
        return Err(Error::BadIndex {
            index: o_index,
            len: c.mults.len(),
        });
    };
    let d = c.d();
    let mo = mo as i128;
    let gon = effective_gonality(c) as i128;
    let mult_form = d * d >= mo + c.sum(|m| (m - 1) * (m - 1)) + 2 * (gon - 1);
    let milnor_form = match &c.milnor {
        Some(mu) => (d - 1) * (d - 1) >= mo - 1 + mu.iter().map(|&x| x as i128).sum::<i128>(),
        None => true,
    };
    Ok(mult_form && milnor_form)
}

/// `sqrt(1/(2s))`, a lower bound for the constant at `s` points when it is
/// computed by an irreducible curve with multiplicity at least 2 at each of
/// them.
pub fn special_lower_bound(s: u64) -> Result<SqrtRat> {
    if s == 0 {
        return Err(Error::BadParameter("need at least one point".into()));
    }
    SqrtRat::new(Rat::new(1.into(), (2 * s).into()))
}

/// `sqrt(sum m (m - 1) / (sum m)^2)`.
pub fn chain_lower_bound(mults: &[u32]) -> Result<SqrtRat> {
    if mults.is_empty() {
        return Err(Error::BadParameter("need at least one multiplicity".into()));
    }
    if let Some(&m) = mults.iter().find(|&&m| m < 2) {
        return Err(Error::BadParameter(format!("multiplicity {m} is below 2")));
    }
    let num: u128 = mults.iter().map(|&m| m as u128 * (m as u128 - 1)).sum();
    let total: u128 = mults.iter().map(|&m| m as u128).sum();
    SqrtRat::new(Rat::new(num.into(), (total * total).into()))
}

pub const SEVERI_TABLE_XS: [u64; 8] = [6, 7, 8, 9, 10, 20, 50, 100];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeveriRow {
    pub x: u64,
    /// `x / ((x-1)(x-2))` as `p/q`.
    pub f: String,
    /// `1 / ((x-1)(x-2))`, the square of `g(x)`, as `p/q`.
    pub g_squared: String,
    /// Both truncated to four decimals.
    pub f_text: String,
    pub g_text: String,
}

/// `f(x) = x/((x-1)(x-2))` and `g(x) = sqrt(1/((x-1)(x-2)))`.
pub fn severi_table(xs: &[u64]) -> Result<Vec<SeveriRow>> {
    xs.iter()
        .map(|&x| {
            if x < 6 {
                return Err(Error::BadParameter(format!(
                    "table entries need x >= 6, got {x}"
                )));
            }
            let den = (x - 1) * (x - 2);
            let f = Rat::new(x.into(), den.into());
            let g = SqrtRat::new(Rat::new(1.into(), den.into()))?;
            Ok(SeveriRow {
                x,
                f_text: crate::projective::truncate_decimal(&f, 4),
                g_text: g.truncate_decimal(4),
                f: fmt_rat(&f),
                g_squared: fmt_rat(g.square()),
            })
        })
        .collect()
}

/// Three rows (`x`, `f(x)`, `g(x)`) with one column per entry.
pub fn render_severi_table(rows: &[SeveriRow]) -> String {
    let mut out = String::new();
    let line = |label: &str, cells: Vec<String>| {
        let cells: Vec<String> = cells.iter().map(|c| format!("{c:>8}")).collect();
        format!("{label:<6}|{}\n", cells.join(""))
    };
    out.push_str(&line("x", rows.iter().map(|r| r.x.to_string()).collect()));
    out.push_str(&line(
        "f(x)",
        rows.iter().map(|r| r.f_text.clone()).collect(),
    ));
    out.push_str(&line(
        "g(x)",
        rows.iter().map(|r| r.g_text.clone()).collect(),
    ));
    out
}

pub const PRUNE_MAX_POINTS: usize = 12;
pub const PRUNE_MAX_DEGREE: u32 = 20;

/// Multiplicity data with ratio `d / sum m` below `target` that is not
/// excluded by the OSZ (for `d >= 4`), Bezout, improved ELX and Huh checks.
///
/// Degrees run over `3..=d_max`, multiplicities over `2..=d-1` and lengths
/// over `1..=s`. Results are sorted by degree and then by multiplicity vector.
/// Survivors are only not excluded; nothing here shows that they exist.
pub fn prune_candidates(s: usize, d_max: u32, target: &Rat) -> Result<Vec<CurveSingData>> {
    if s > PRUNE_MAX_POINTS || d_max > PRUNE_MAX_DEGREE {
        return Err(Error::BadParameter(format!(
            "search limited to s <= {PRUNE_MAX_POINTS} and d_max <= {PRUNE_MAX_DEGREE}"
        )));
    }
    let mut out = Vec::new();
    for d in 3..=d_max {
        let mut prefix = Vec::new();
        extend(d, s, target, &mut prefix, &mut out)?;
    }
    out.sort_by(|a, b| (a.degree, &a.mults).cmp(&(b.degree, &b.mults)));
    Ok(out)
}

fn extend(
    d: u32,
    s: usize,
    target: &Rat,
    prefix: &mut Vec<u32>,
    out: &mut Vec<CurveSingData>,
) -> Result<()> {
    if !prefix.is_empty() {
        let total: u64 = prefix.iter().map(|&m| m as u64).sum();
        if Rat::new(d.into(), total.into()) < *target {
            let c = CurveSingData::new(d, prefix.clone())?;
            if survives(&c)? {
                out.push(c);
            }
        }
    }
    if prefix.len() == s {
        return Ok(());
    }
    let top = prefix.last().copied().unwrap_or(d - 1);
    let used: u64 = prefix.iter().map(|&m| m as u64 * (m as u64 - 1)).sum();
    let room = d as u64 * (d as u64 - 1);
    for m in 2..=top {
        // every later vector would fail the Bezout check
        if used + m as u64 * (m as u64 - 1) > room {
            break;
        }
        prefix.push(m);
        extend(d, s, target, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

fn survives(c: &CurveSingData) -> Result<bool> {
    let osz = c.degree < 4 || check_osz(c)?;
    if !(osz && check_bezout_mult(c) && check_elx2_improved(c)?) {
        return Ok(false);
    }
    for o in 0..c.num_points() {
        if !check_huh(c, o)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::rat;

    fn cs(d: u32, mults: &[u32]) -> CurveSingData {
        CurveSingData::new(d, mults.to_vec()).unwrap()
    }

    fn nodes(d: u32, k: usize) -> CurveSingData {
        CurveSingData::from_singularities(d, &vec![Singularity::Node; k]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(CurveSingData::new(6, vec![2, 3]).is_err());
        assert!(CurveSingData::new(6, vec![3, 1]).is_err());
        assert!(CurveSingData::new(0, vec![]).is_err());
        assert!(cs(6, &[3, 2]).with_milnor(vec![3, 1]).is_err());
        assert!(cs(6, &[3, 2]).with_milnor(vec![4]).is_err());
        assert!(cs(6, &[3, 2]).with_milnor(vec![4, 1]).is_ok());
        assert_eq!(CurveSingData::severi(6).unwrap().num_points(), 10);
    }

    #[test]
    fn gonality_precedence() {
        assert_eq!(effective_gonality(&cs(6, &[3, 2, 2])), 3);
        assert_eq!(effective_gonality(&cs(5, &[])), 5);
        assert_eq!(
            effective_gonality(&cs(6, &[3]).with_gonality_bound(2).unwrap()),
            2
        );
    }

    #[test]
    fn osz_examples() {
        assert!(check_osz(&cs(6, &[2; 10])).unwrap());
        // -24 > -24 fails
        assert!(!check_osz(&cs(4, &[2; 10])).unwrap());
        assert!(check_osz(&cs(4, &[])).unwrap());
        assert!(matches!(
            check_osz(&cs(3, &[2])),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn osz_milnor_examples() {
        assert!(check_osz_milnor(&nodes(6, 10)).unwrap());
        assert!(!check_osz_milnor(&nodes(4, 10)).unwrap());
        assert!(check_osz_milnor(
            &CurveSingData::from_singularities(6, &[Singularity::Cusp]).unwrap()
        )
        .unwrap());
        assert_eq!(check_osz_milnor(&cs(6, &[2])), Err(Error::MissingMilnor));
    }

    #[test]
    fn bezout_examples() {
        assert!(!check_bezout_mult(&cs(4, &[2; 7])));
        assert!(check_bezout_mult(&cs(4, &[3, 3])));
        assert!(check_bezout_mult(&cs(3, &[2])));
    }

    #[test]
    fn elx1_examples() {
        assert!(check_elx1(&nodes(6, 10)).unwrap());
        assert!(check_elx1(&cs(3, &[2, 2, 2]).with_gonality_bound(1).unwrap()).unwrap());
        assert!(check_elx1(&cs(4, &[2; 10]).with_gonality_bound(2).unwrap()).unwrap());
        assert!(!check_elx1(&cs(4, &[2; 13]).with_gonality_bound(2).unwrap()).unwrap());
        assert!(check_elx1(&cs(2, &[2])).is_err());
    }

    #[test]
    fn elx2_examples() {
        for d in 6..=100 {
            assert!(check_elx2(&CurveSingData::severi(d).unwrap()).unwrap());
        }
        assert!(check_elx2(&cs(4, &[3, 3])).unwrap());
        assert!(check_elx2(&cs(4, &[2; 7])).unwrap());
        assert!(!check_elx2(&cs(4, &[2; 8])).unwrap());
    }

    #[test]
    fn elx2_improved_examples() {
        assert!(check_elx2_improved(&cs(6, &[3, 2, 2, 2, 2, 2, 2, 2])).unwrap());
        assert!(check_elx2_improved(&cs(4, &[3, 3])).unwrap());
        assert!(check_elx2_improved(&cs(4, &[3, 2, 2, 2])).unwrap());
        assert!(!check_elx2_improved(&cs(4, &[3, 2, 2, 2, 2])).unwrap());
        assert!(check_elx2_improved(&cs(4, &[])).is_err());
    }

    #[test]
    fn huh_examples() {
        let severi = CurveSingData::severi(6).unwrap();
        for o in 0..10 {
            assert!(check_huh(&severi, o).unwrap());
        }
        assert!(check_huh(&cs(3, &[2]).with_gonality_bound(1).unwrap(), 0).unwrap());
        assert!(check_huh(&cs(4, &[3, 3]), 0).unwrap());
        assert_eq!(
            check_huh(&cs(4, &[3, 3]), 2),
            Err(Error::BadIndex { index: 2, len: 2 })
        );
    }

    #[test]
    fn huh_milnor_form() {
        // multiplicity form holds, but 1 + 26 > (d-1)^2 = 25
        let c = CurveSingData::from_singularities(6, &[Singularity::Cusp; 13]).unwrap();
        assert!(!check_huh(&c, 0).unwrap());
        let c = CurveSingData::from_singularities(6, &[Singularity::Cusp; 9]).unwrap();
        assert!(check_huh(&c, 0).unwrap());
    }

    #[test]
    fn square_comparable_bounds() {
        let b = special_lower_bound(10).unwrap();
        assert!(b.cmp_rat(&rat(1, 4)).is_lt());
        assert!(b.cmp_rat(&rat(3, 10)).is_lt());
        assert_eq!(special_lower_bound(2).unwrap().exact(), Some(rat(1, 2)));
        assert_eq!(chain_lower_bound(&[2; 10]).unwrap().square(), &rat(1, 20));
        assert_eq!(chain_lower_bound(&[3, 3, 3]).unwrap().square(), &rat(2, 9));
        assert_eq!(chain_lower_bound(&[2]).unwrap().square(), &rat(1, 2));
        assert!(chain_lower_bound(&[2, 1]).is_err());
    }

    #[test]
    fn table_digits() {
        let rows = severi_table(&SEVERI_TABLE_XS).unwrap();
        let f: Vec<&str> = rows.iter().map(|r| r.f_text.as_str()).collect();
        let g: Vec<&str> = rows.iter().map(|r| r.g_text.as_str()).collect();
        assert_eq!(
            f,
            ["0.3000", "0.2333", "0.1904", "0.1607", "0.1388", "0.0584", "0.0212", "0.0103"]
        );
        assert_eq!(
            g,
            ["0.2236", "0.1825", "0.1543", "0.1336", "0.1178", "0.0540", "0.0206", "0.0101"]
        );
        assert_eq!(rows[4].f, "5/36");
        assert!(severi_table(&[5]).is_err());
        let table = render_severi_table(&rows);
        assert_eq!(table.lines().count(), 3);
    }

    #[test]
    fn pruning_examples() {
        assert!(prune_candidates(1, 3, &rat(1, 3)).unwrap().is_empty());
        let at_one = prune_candidates(1, 3, &rat(1, 1)).unwrap();
        assert!(!at_one.iter().any(|c| c.degree == 3 && c.mults == [2]));
        let at_two = prune_candidates(1, 3, &rat(2, 1)).unwrap();
        assert!(at_two.iter().any(|c| c.degree == 3 && c.mults == [2]));
        assert!(prune_candidates(13, 4, &rat(1, 2)).is_err());
        assert!(prune_candidates(3, 21, &rat(1, 2)).is_err());
    }
}
