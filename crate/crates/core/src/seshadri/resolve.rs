use std::collections::BTreeMap;

use super::certificate::{
    best_line_upper, covering_lower_bound, pairing_certificate, Certificate, CertificateKind,
    ComponentSource, DivisorComponent, LineDivisor,
};
use super::cover::min_line_cover_with_limit;
use super::{seshadri_ratio, trivial_bounds, CurveClass, DEFAULT_NODE_LIMIT};
use crate::arrangement::IncidenceStructure;
use crate::error::{Error, Result};
use crate::projective::{fmt_rat, Rat, SqrtRat};

/// An exact rational interval for the Seshadri constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimate {
    pub lower: Rat,
    pub upper: Rat,
    pub exact: bool,
    pub certificates: Vec<Certificate>,
    pub trivial_lower: Rat,
    /// `1/sqrt(r)`, kept as its square.
    pub trivial_upper: SqrtRat,
    pub notes: Vec<String>,
}

impl Estimate {
    pub fn value(&self) -> Option<&Rat> {
        self.exact.then_some(&self.lower)
    }

    fn finish(
        mut lower: Rat,
        upper: Rat,
        r: u64,
        certificates: Vec<Certificate>,
        mut notes: Vec<String>,
    ) -> Self {
        let (trivial_lower, trivial_upper) = trivial_bounds(r).expect("r >= 1");
        if lower < trivial_lower {
            notes.push(format!(
                "lower bound raised to the trivial bound {}",
                fmt_rat(&trivial_lower)
            ));
            lower = trivial_lower.clone();
        }
        if lower > upper {
            notes.push(
                "lower bound exceeds upper bound: some supplied class cannot be a curve".into(),
            );
        }
        if trivial_upper.cmp_rat(&upper).is_lt() {
            notes.push(format!(
                "the trivial upper bound {trivial_upper} is below the certified upper bound"
            ));
        }
        Self {
            exact: lower == upper,
            lower,
            upper,
            certificates,
            trivial_lower,
            trivial_upper,
            notes,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolveOptions {
    /// Largest cover the search may return; `None` means no limit.
    pub cover_budget: Option<usize>,
    pub node_limit: u64,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        Self {
            cover_budget: None,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

pub fn resolve(s: &IncidenceStructure) -> Estimate {
    resolve_with(s, &[], ResolveOptions::default()).expect("no user classes to reject")
}

/// Upper bound from the best line and the supplied classes; lower bound from
/// pairing with the whole arrangement and, if that does not close the gap,
/// with a minimum line cover.
pub fn resolve_with(
    s: &IncidenceStructure,
    extra_uppers: &[CurveClass],
    opts: ResolveOptions,
) -> Result<Estimate> {
    let mut certificates = vec![best_line_upper(s)];
    for c in extra_uppers {
        let value = seshadri_ratio(c, s)?;
        let label = c.label().unwrap_or("supplied class");
        certificates.push(Certificate {
            kind: CertificateKind::Upper(c.clone()),
            value,
            notes: format!("{label}: existence of the curve is assumed, not checked"),
        });
    }
    let upper = certificates
        .iter()
        .map(|c| c.value.clone())
        .min()
        .expect("one upper certificate");

    let mut notes = Vec::new();
    let full = covering_lower_bound(&LineDivisor::full_arrangement(s), s)?;
    let mut lower = full.value.clone();
    certificates.push(full);
    if lower < upper {
        let budget = opts.cover_budget.unwrap_or(s.num_points());
        match min_line_cover_with_limit(s, budget, opts.node_limit) {
            Ok(Some(cover)) => {
                let cert = covering_lower_bound(&cover, s)?;
                if cert.value > lower {
                    lower = cert.value.clone();
                }
                certificates.push(cert);
            }
            Ok(None) => notes.push(format!("no line cover with at most {budget} lines")),
            Err(Error::Timeout(limit)) => {
                notes.push(format!("cover search stopped after {limit} nodes"))
            }
            Err(e) => return Err(e),
        }
    }
    if lower < upper {
        notes.push("certificates do not close the interval".into());
    }
    Ok(Estimate::finish(
        lower,
        upper,
        s.num_points() as u64,
        certificates,
        notes,
    ))
}

/// The constant at the `(d-1)(d-2)/2` nodes of a degree-`d` curve with only
/// nodes as singularities, `d >= 6`.
///
/// Upper bound: the curve itself. Lower bound: pairing with the curve, which
/// has multiplicity 2 at every node, gives `2/d` for all other curves, and
/// `2/d >= d/((d-1)(d-2))` exactly when `d^2 - 6d + 4 >= 0`.
pub fn severi_estimate(d: u64) -> Result<Estimate> {
    if d < 6 {
        return Err(Error::BadParameter(format!(
            "the pairing argument needs degree >= 6, got {d}"
        )));
    }
    let nodes = ((d - 1) * (d - 2) / 2) as usize;
    let curve = CurveClass::new(d, (0..nodes).map(|p| (p, 2)))?
        .with_label(format!("nodal curve of degree {d}"))
        .irreducible_candidate()?;
    let upper_cert = Certificate {
        value: curve.ratio(),
        notes: format!("degree {d} with {nodes} nodes; existence is assumed"),
        kind: CertificateKind::Upper(curve),
    };
    let component = DivisorComponent {
        source: ComponentSource::Curve(format!("nodal curve of degree {d}")),
        degree: d,
        coefficient: 1,
        point_mults: (0..nodes).map(|p| (p, 2)).collect::<BTreeMap<_, _>>(),
    };
    let mut lower_cert = pairing_certificate(&LineDivisor::new(vec![component])?, nodes)?;
    let slack = (d * d) as i128 - 6 * d as i128 + 4;
    lower_cert
        .notes
        .push_str(&format!("; d^2 - 6d + 4 = {slack} >= 0"));
    let (lower, upper) = (lower_cert.value.clone(), upper_cert.value.clone());
    Ok(Estimate::finish(
        lower,
        upper,
        nodes as u64,
        vec![upper_cert, lower_cert],
        Vec::new(),
    ))
}
