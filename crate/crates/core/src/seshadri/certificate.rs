use std::collections::BTreeMap;
use std::fmt;

use super::cover::line_pool;
use super::CurveClass;
use crate::arrangement::IncidenceStructure;
use crate::error::{Error, Result};
use crate::projective::{fmt_rat, ProjLine, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentSource {
    ArrangementLine(usize),
    VirtualLine(String),
    /// A rational line that is not one of the arrangement lines.
    CoordinateLine(ProjLine),
    /// A curve of higher degree, known only through its class.
    Curve(String),
}

impl fmt::Display for ComponentSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentSource::ArrangementLine(j) => write!(f, "line {j}"),
            ComponentSource::VirtualLine(name) => write!(f, "virtual line {name}"),
            ComponentSource::CoordinateLine(l) => write!(f, "line {l}"),
            ComponentSource::Curve(label) => write!(f, "curve {label}"),
        }
    }
}

/// One component `coefficient * C` of a pairing divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorComponent {
    pub source: ComponentSource,
    pub degree: u64,
    pub coefficient: u64,
    /// Multiplicity of the component at each configuration point it contains.
    pub point_mults: BTreeMap<usize, u64>,
}

impl DivisorComponent {
    pub fn line(source: ComponentSource, points: &[usize]) -> Self {
        Self {
            source,
            degree: 1,
            coefficient: 1,
            point_mults: points.iter().map(|&p| (p, 1)).collect(),
        }
    }

    /// Number of configuration points on the component (`c_L` for a line).
    pub fn point_count(&self) -> usize {
        self.point_mults.len()
    }

    /// The component's own Seshadri ratio, if it meets the configuration.
    pub fn ratio(&self) -> Option<Rat> {
        let total: u64 = self.point_mults.values().sum();
        (total > 0).then(|| Rat::new(self.degree.into(), total.into()))
    }
}

/// An effective divisor `C = sum c_i C_i` used in the pairing argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineDivisor {
    components: Vec<DivisorComponent>,
}

impl LineDivisor {
    pub fn new(components: Vec<DivisorComponent>) -> Result<Self> {
        if components.is_empty()
            || components
                .iter()
                .any(|c| c.coefficient == 0 || c.degree == 0)
        {
            return Err(Error::BadParameter(
                "divisor needs positive components".into(),
            ));
        }
        Ok(Self { components })
    }

    pub fn arrangement_lines(s: &IncidenceStructure, lines: &[usize]) -> Result<Self> {
        let components = lines
            .iter()
            .map(|&j| {
                if j >= s.num_lines() {
                    return Err(Error::BadParameter(format!("no arrangement line {j}")));
                }
                Ok(DivisorComponent::line(
                    ComponentSource::ArrangementLine(j),
                    &s.points_on_line(j),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    /// The sum of all arrangement lines.
    pub fn full_arrangement(s: &IncidenceStructure) -> Self {
        let all: Vec<usize> = (0..s.num_lines()).collect();
        Self::arrangement_lines(s, &all).expect("structures have at least one line")
    }

    /// The sum of the named virtual lines, or of all of them for `None`.
    pub fn virtual_lines(s: &IncidenceStructure, names: Option<&[&str]>) -> Result<Self> {
        let chosen: Vec<_> = match names {
            None => s.virtual_lines().iter().collect(),
            Some(names) => names
                .iter()
                .map(|n| {
                    s.virtual_lines()
                        .iter()
                        .find(|v| v.name() == *n)
                        .ok_or_else(|| Error::BadParameter(format!("no virtual line named {n:?}")))
                })
                .collect::<Result<_>>()?,
        };
        let components = chosen
            .into_iter()
            .map(|v| {
                DivisorComponent::line(
                    ComponentSource::VirtualLine(v.name().to_string()),
                    v.points(),
                )
            })
            .collect();
        Self::new(components)
    }

    pub fn components(&self) -> &[DivisorComponent] {
        &self.components
    }

    /// `k`, the degree of the divisor.
    pub fn total_degree(&self) -> u64 {
        self.components
            .iter()
            .map(|c| c.coefficient * c.degree)
            .sum()
    }

    pub fn multiplicity_at(&self, point: usize) -> u64 {
        self.components
            .iter()
            .map(|c| c.coefficient * c.point_mults.get(&point).copied().unwrap_or(0))
            .sum()
    }

    /// Bezout inequality `e k >= sum_p mult_p(C) n_p` for a curve class that
    /// shares no component with this divisor.
    pub fn pairing_holds(&self, c: &CurveClass) -> bool {
        let lhs = c.degree() as u128 * self.total_degree() as u128;
        let rhs: u128 = c
            .mults()
            .iter()
            .map(|(&p, &n)| self.multiplicity_at(p) as u128 * n as u128)
            .sum();
        lhs >= rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateKind {
    /// The ratio of an explicit class bounds the constant from above.
    Upper(CurveClass),
    /// Pairing with a divisor through every point: `a` is the least divisor
    /// multiplicity at a point and `k` the divisor degree.
    LowerPairing {
        divisor: LineDivisor,
        a: u64,
        k: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub value: Rat,
    pub notes: String,
}

impl Certificate {
    pub fn is_upper(&self) -> bool {
        matches!(self.kind, CertificateKind::Upper(_))
    }
}

/// Lower bound from pairing with `div`.
///
/// An irreducible curve `D` of degree `e` that is not a component meets the
/// divisor properly, so `e k = D.C >= sum_p mult_p(C) n_p >= a sum_p n_p` and
/// its ratio is at least `a / k`. Curves that are components are scored by
/// their own ratio. The minimum of these is a bound for every curve.
pub fn covering_lower_bound(div: &LineDivisor, s: &IncidenceStructure) -> Result<Certificate> {
    pairing_certificate(div, s.num_points())
}

pub(crate) fn pairing_certificate(div: &LineDivisor, num_points: usize) -> Result<Certificate> {
    if let Some(p) = div
        .components
        .iter()
        .flat_map(|c| c.point_mults.keys())
        .find(|&&p| p >= num_points)
    {
        return Err(Error::UnknownPoint(*p));
    }
    let mut a = u64::MAX;
    for p in 0..num_points {
        let m = div.multiplicity_at(p);
        if m == 0 {
            return Err(Error::NotCovering(p));
        }
        a = a.min(m);
    }
    let k = div.total_degree();
    let mut value = Rat::new(a.into(), k.into());
    let mut notes = vec![format!("pairing bound a/k = {a}/{k}")];
    let least = div
        .components
        .iter()
        .filter_map(|c| c.ratio().map(|r| (r, c)))
        .min_by(|x, y| x.0.cmp(&y.0));
    if let Some((r, c)) = least {
        notes.push(format!(
            "least component ratio {} ({})",
            fmt_rat(&r),
            c.source
        ));
        if r < value {
            value = r;
        }
    }
    let virtual_names: Vec<&str> = div
        .components
        .iter()
        .filter_map(|c| match &c.source {
            ComponentSource::VirtualLine(n) => Some(n.as_str()),
            _ => None,
        })
        .collect();
    if !virtual_names.is_empty() {
        notes.push(format!(
            "virtual lines {} are taken from the input data; their existence is not checked",
            virtual_names.join(", ")
        ));
    }
    Ok(Certificate {
        kind: CertificateKind::LowerPairing {
            divisor: div.clone(),
            a,
            k,
        },
        value,
        notes: notes.join("; "),
    })
}

/// The line through the most configuration points.
///
/// Candidates are the arrangement lines and declared virtual lines, plus, for
/// coordinate-backed structures, every line joining two configuration points.
/// Ties go to the earliest candidate in that order.
pub fn best_line_upper(s: &IncidenceStructure) -> Certificate {
    let pool = line_pool(s, false);
    let best = pool
        .iter()
        .fold(None::<&super::CoverCandidate>, |best, c| match best {
            Some(b) if b.points.len() >= c.points.len() => Some(b),
            _ => Some(c),
        })
        .expect("every structure has an arrangement line");
    let class = CurveClass::new(1, best.points.iter().map(|&p| (p, 1)))
        .expect("arrangement lines contain configuration points")
        .with_label(best.source.to_string());
    let mut notes = format!(
        "{} passes through {} configuration points",
        best.source,
        best.points.len()
    );
    if let ComponentSource::VirtualLine(_) = best.source {
        notes.push_str("; virtual line taken from the input data");
    }
    Certificate {
        value: class.ratio(),
        kind: CertificateKind::Upper(class),
        notes,
    }
}
