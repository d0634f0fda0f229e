//! Machine (JSON) and human (text) reports.
//!
//! Machine reports hold rationals only as `p/q` strings and integers. Text
//! reports add decimal previews, marked with `~`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arrangement::IncidenceStructure;
use crate::error::{Error, Result};
use crate::projective::{fmt_rat, parse_rat, to_f64, Rat};
use crate::seshadri::{Certificate, CertificateKind, Estimate};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementSummary {
    pub name: Option<String>,
    /// Number of lines.
    pub d: usize,
    /// Number of configuration points.
    pub r: usize,
    /// `t_k` keyed by the multiplicity `k`.
    pub tk: BTreeMap<String, usize>,
    /// Configuration points on each line.
    pub r_j: Vec<usize>,
    /// Largest `r_j`.
    pub s: usize,
    pub hirzebruch_n: Option<usize>,
    pub warnings: Vec<String>,
}

impl ArrangementSummary {
    pub fn new(s: &IncidenceStructure, warnings: Vec<String>) -> Self {
        let counts = s.line_point_counts();
        Self {
            name: s.name().map(str::to_string),
            d: s.num_lines(),
            r: s.num_points(),
            tk: s
                .tk_vector()
                .into_iter()
                .map(|(k, t)| (k.to_string(), t))
                .collect(),
            r_j: counts.counts,
            s: counts.max,
            hirzebruch_n: s.hirzebruch_property(),
            warnings,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub label: Option<String>,
    pub degree: u64,
    /// `[point, multiplicity]` pairs.
    pub mults: Vec<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub source: String,
    pub degree: u64,
    pub coefficient: u64,
    /// Configuration points on the component.
    pub c_l: usize,
    pub points: Vec<usize>,
    pub ratio: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorReport {
    pub a: u64,
    pub k: u64,
    pub components: Vec<ComponentReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// `upper` or `lower_pairing`.
    pub kind: String,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<DivisorReport>,
    pub notes: String,
}

impl From<&Certificate> for CertificateReport {
    fn from(c: &Certificate) -> Self {
        let (kind, curve, divisor) = match &c.kind {
            CertificateKind::Upper(class) => (
                "upper",
                Some(CurveReport {
                    label: class.label().map(str::to_string),
                    degree: class.degree(),
                    mults: class.mults().iter().map(|(&p, &n)| (p, n)).collect(),
                }),
                None,
            ),
            CertificateKind::LowerPairing { divisor, a, k } => (
                "lower_pairing",
                None,
                Some(DivisorReport {
                    a: *a,
                    k: *k,
                    components: divisor
                        .components()
                        .iter()
                        .map(|comp| ComponentReport {
                            source: comp.source.to_string(),
                            degree: comp.degree,
                            coefficient: comp.coefficient,
                            c_l: comp.point_count(),
                            points: comp.point_mults.keys().copied().collect(),
                            ratio: comp.ratio().map(|r| fmt_rat(&r)),
                        })
                        .collect(),
                }),
            ),
        };
        Self {
            kind: kind.into(),
            value: fmt_rat(&c.value),
            curve,
            divisor,
            notes: c.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub lower: String,
    pub upper: String,
    pub exact: bool,
    pub value: Option<String>,
    pub trivial_lower: String,
    /// Square of the trivial upper bound `1/sqrt(r)`.
    pub trivial_upper_squared: String,
    pub certificates: Vec<CertificateReport>,
    pub notes: Vec<String>,
}

impl From<&Estimate> for EstimateReport {
    fn from(e: &Estimate) -> Self {
        Self {
            lower: fmt_rat(&e.lower),
            upper: fmt_rat(&e.upper),
            exact: e.exact,
            value: e.value().map(fmt_rat),
            trivial_lower: fmt_rat(&e.trivial_lower),
            trivial_upper_squared: fmt_rat(e.trivial_upper.square()),
            certificates: e.certificates.iter().map(CertificateReport::from).collect(),
            notes: e.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audits {
    /// `1/s` with `s` the largest number of points on an arrangement line.
    pub one_over_s: String,
    /// Whether the estimate is exact and equals `1/s`.
    pub computed_by_richest_line: bool,
    /// `max r_j / d`, absent for a pencil.
    pub max_r_ratio: Option<String>,
}

impl Audits {
    pub fn new(s: &IncidenceStructure, e: &Estimate) -> Self {
        let one_over_s = Rat::new(1.into(), s.line_point_counts().max.into());
        Self {
            computed_by_richest_line: e.value() == Some(&one_over_s),
            one_over_s: fmt_rat(&one_over_s),
            max_r_ratio: s.max_r_ratio().ok().map(|q| fmt_rat(&q)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub arrangement: ArrangementSummary,
    pub estimate: EstimateReport,
    pub audits: Audits,
}

impl Report {
    pub fn new(s: &IncidenceStructure, e: &Estimate, warnings: Vec<String>) -> Self {
        Self {
            arrangement: ArrangementSummary::new(s, warnings),
            estimate: EstimateReport::from(e),
            audits: Audits::new(s, e),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let a = &self.arrangement;
        let mut out = String::new();
        let name = a.name.as_deref().unwrap_or("(unnamed)");
        writeln!(out, "arrangement {name}: {} lines, {} points", a.d, a.r).unwrap();
        let tk: Vec<String> = a.tk.iter().map(|(k, t)| format!("t_{k} = {t}")).collect();
        writeln!(out, "  {}", tk.join(", ")).unwrap();
        writeln!(out, "  points per line: {:?} (max s = {})", a.r_j, a.s).unwrap();
        if let Some(n) = a.hirzebruch_n {
            writeln!(out, "  every line meets the others in {} points", n + 1).unwrap();
        }
        for w in &a.warnings {
            writeln!(out, "  warning: {w}").unwrap();
        }
        out.push_str(&estimate_text(&self.estimate));
        writeln!(out, "audits").unwrap();
        writeln!(
            out,
            "  1/s = {}, estimate equals 1/s: {}",
            self.audits.one_over_s, self.audits.computed_by_richest_line
        )
        .unwrap();
        match &self.audits.max_r_ratio {
            Some(q) => writeln!(out, "  max r_j / d = {}", preview(q)).unwrap(),
            None => writeln!(out, "  max r_j / d undefined for a pencil").unwrap(),
        }
        out
    }
}

/// Pretty JSON with a trailing newline. Field order is fixed by the types.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize");
    out.push('\n');
    out
}

/// `p/q (~0.1234)`.
pub fn preview(q: &str) -> String {
    match parse_rat(q) {
        Ok(r) => format!("{q} (~{:.4})", to_f64(&r)),
        Err(_) => q.to_string(),
    }
}

pub fn estimate_text(e: &EstimateReport) -> String {
    let mut out = String::new();
    match &e.value {
        Some(v) => writeln!(out, "seshadri constant = {}", preview(v)).unwrap(),
        None => writeln!(
            out,
            "seshadri constant in [{}, {}], not exact",
            preview(&e.lower),
            preview(&e.upper)
        )
        .unwrap(),
    }
    writeln!(
        out,
        "  trivial bounds: {} <= eps <= sqrt({})",
        e.trivial_lower, e.trivial_upper_squared
    )
    .unwrap();
    for c in &e.certificates {
        out.push_str(&certificate_text(c));
    }
    for n in &e.notes {
        writeln!(out, "  note: {n}").unwrap();
    }
    out
}

pub fn certificate_text(c: &CertificateReport) -> String {
    let mut out = String::new();
    match (&c.curve, &c.divisor) {
        (Some(curve), _) => {
            let label = curve.label.as_deref().unwrap_or("curve");
            writeln!(
                out,
                "  upper {}: {label}, degree {} through {} points",
                preview(&c.value),
                curve.degree,
                curve.mults.len()
            )
            .unwrap();
        }
        (None, Some(div)) => {
            writeln!(
                out,
                "  lower {}: pairing with {} components, a = {}, k = {}",
                preview(&c.value),
                div.components.len(),
                div.a,
                div.k
            )
            .unwrap();
            if div.components.len() > 12 {
                let mut by_count: BTreeMap<usize, usize> = BTreeMap::new();
                for comp in &div.components {
                    *by_count.entry(comp.c_l).or_insert(0) += 1;
                }
                for (c_l, n) in by_count {
                    writeln!(out, "    {n} components with c_L = {c_l}").unwrap();
                }
            } else {
                for comp in &div.components {
                    let coeff = if comp.coefficient == 1 {
                        String::new()
                    } else {
                        format!("{} * ", comp.coefficient)
                    };
                    writeln!(
                        out,
                        "    {coeff}{} (degree {}, c_L = {})",
                        comp.source, comp.degree, comp.c_l
                    )
                    .unwrap();
                }
            }
        }
        (None, None) => writeln!(out, "  {} {}", c.kind, preview(&c.value)).unwrap(),
    }
    writeln!(out, "    {}", c.notes).unwrap();
    out
}
