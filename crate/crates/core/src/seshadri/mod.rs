//! Seshadri ratios of `O(1)` on the projective plane, bound certificates, and
//! the resolver that combines them.
//!
//! Curves enter only as numeric classes: a degree `e` and multiplicities
//! `n_p` at configuration points. The ratio of a class is `e / sum n_p`, and
//! the Seshadri constant is the infimum of the ratios of irreducible curves
//! through at least one of the points.

use std::collections::BTreeMap;

use crate::arrangement::IncidenceStructure;
use crate::error::{Error, Result};
use crate::projective::{Rat, SqrtRat};

mod certificate;
mod cover;
mod resolve;

pub use certificate::{
    best_line_upper, covering_lower_bound, Certificate, CertificateKind, ComponentSource,
    DivisorComponent, LineDivisor,
};
pub use cover::{
    cover_candidates, greedy_cover, min_line_cover, min_line_cover_with_limit, CoverCandidate,
};
pub use resolve::{resolve, resolve_with, severi_estimate, Estimate, ResolveOptions};

/// Node limit used by [`min_line_cover`] and [`resolve`].
pub const DEFAULT_NODE_LIMIT: u64 = 20_000_000;

/// A candidate curve: degree plus multiplicities at configuration points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    degree: u64,
    mults: BTreeMap<usize, u64>,
    label: Option<String>,
    irreducible_candidate: bool,
}

impl CurveClass {
    /// Zero multiplicities are dropped; at least one must be positive.
    pub fn new(degree: u64, mults: impl IntoIterator<Item = (usize, u64)>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::BadParameter("curve degree must be positive".into()));
        }
        let mults: BTreeMap<usize, u64> = mults.into_iter().filter(|&(_, n)| n > 0).collect();
        if mults.is_empty() {
            return Err(Error::ZeroMultiplicity);
        }
        Ok(Self {
            degree,
            mults,
            label: None,
            irreducible_candidate: false,
        })
    }

    /// Multiplicities at points `0, 1, 2, ...` in order.
    pub fn from_multiplicities(degree: u64, mults: &[u64]) -> Result<Self> {
        Self::new(degree, mults.iter().copied().enumerate())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Flags the class as a possible irreducible curve, which requires
    /// `sum n_p (n_p - 1) <= e (e - 1)`.
    pub fn irreducible_candidate(mut self) -> Result<Self> {
        let lhs: u128 = self
            .mults
            .values()
            .map(|&n| n as u128 * (n as u128 - 1))
            .sum();
        let e = self.degree as u128;
        let rhs = e * (e - 1);
        if lhs > rhs {
            return Err(Error::NotIrreducibleCandidate { lhs, rhs });
        }
        self.irreducible_candidate = true;
        Ok(self)
    }

    pub fn is_irreducible_candidate(&self) -> bool {
        self.irreducible_candidate
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn mults(&self) -> &BTreeMap<usize, u64> {
        &self.mults
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.mults.values().sum()
    }

    /// `e / sum n_p`.
    pub fn ratio(&self) -> Rat {
        Rat::new(self.degree.into(), self.total_multiplicity().into())
    }

    /// Positive multiplicities in weakly decreasing order.
    pub fn multiplicity_vector(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.mults.values().copied().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// Ratio of a class whose points must belong to `s`.
pub fn seshadri_ratio(c: &CurveClass, s: &IncidenceStructure) -> Result<Rat> {
    if let Some((&p, _)) = c.mults.iter().find(|(&p, _)| p >= s.num_points()) {
        return Err(Error::UnknownPoint(p));
    }
    Ok(c.ratio())
}

/// `1/r <= eps <= 1/sqrt(r)` for any `r` points.
pub fn trivial_bounds(r: u64) -> Result<(Rat, SqrtRat)> {
    if r == 0 {
        return Err(Error::BadParameter("need at least one point".into()));
    }
    let lower = Rat::new(1.into(), r.into());
    Ok((lower.clone(), SqrtRat::new(lower)?))
}

/// All entries equal after removing at most one of them.
pub fn almost_homogeneous(mults: &[u64]) -> bool {
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for &m in mults {
        *counts.entry(m).or_insert(0) += 1;
    }
    match counts.len() {
        0 | 1 => true,
        2 => counts.values().any(|&c| c == 1),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::rat;

    fn remark_sextic() -> CurveClass {
        let mut mults = vec![3];
        mults.extend([2; 7]);
        mults.extend([1; 19]);
        CurveClass::from_multiplicities(6, &mults).unwrap()
    }

    #[test]
    fn sextic_ratio() {
        let c = remark_sextic().irreducible_candidate().unwrap();
        assert_eq!(c.total_multiplicity(), 36);
        assert_eq!(c.ratio(), rat(1, 6));
        assert!(!almost_homogeneous(&c.multiplicity_vector()));
    }

    #[test]
    fn line_through_four_points() {
        assert_eq!(
            CurveClass::from_multiplicities(1, &[1, 1, 1, 1])
                .unwrap()
                .ratio(),
            rat(1, 4)
        );
    }

    #[test]
    fn cuspidal_sextic_family() {
        for k in 1..=5u64 {
            let c = CurveClass::from_multiplicities(6 * k, &vec![2; (9 * k * k) as usize])
                .unwrap()
                .irreducible_candidate()
                .unwrap();
            assert_eq!(c.ratio(), rat(1, 3 * k as i64));
        }
    }

    #[test]
    fn class_validation() {
        assert_eq!(
            CurveClass::from_multiplicities(2, &[0, 0]),
            Err(Error::ZeroMultiplicity)
        );
        assert!(CurveClass::from_multiplicities(0, &[1]).is_err());
        // a conic cannot have two double points
        let err = CurveClass::from_multiplicities(2, &[2, 2])
            .unwrap()
            .irreducible_candidate();
        assert_eq!(err, Err(Error::NotIrreducibleCandidate { lhs: 4, rhs: 2 }));
    }

    #[test]
    fn ratio_checks_point_ids() {
        let s = crate::arrangement::gen_star(3).unwrap();
        let c = CurveClass::new(1, [(0, 1), (5, 1)]).unwrap();
        assert_eq!(seshadri_ratio(&c, &s), Err(Error::UnknownPoint(5)));
        let ok = CurveClass::new(1, [(0, 1), (1, 1)]).unwrap();
        assert_eq!(seshadri_ratio(&ok, &s).unwrap(), rat(1, 2));
    }

    #[test]
    fn trivial_bound_examples() {
        let (lo, hi) = trivial_bounds(49).unwrap();
        assert_eq!((lo, hi.exact()), (rat(1, 49), Some(rat(1, 7))));
        let (lo, hi) = trivial_bounds(1).unwrap();
        assert_eq!((lo, hi.exact()), (rat(1, 1), Some(rat(1, 1))));
        let (_, hi) = trivial_bounds(12).unwrap();
        assert_eq!(hi.cmp_rat(&rat(1, 4)), std::cmp::Ordering::Greater);
        assert!(trivial_bounds(0).is_err());
    }

    #[test]
    fn almost_homogeneous_examples() {
        assert!(almost_homogeneous(&[3, 2, 2, 2, 2, 2, 2, 2]));
        assert!(almost_homogeneous(&[5, 5, 5, 5]));
        assert!(almost_homogeneous(&[4]));
        assert!(almost_homogeneous(&[3, 5]));
        assert!(!almost_homogeneous(&[3, 3, 5, 5]));
        assert!(!almost_homogeneous(&[1, 2, 3]));
    }
}
