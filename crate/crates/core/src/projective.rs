//! Exact projective-plane primitives over the rationals.
//!
//! Points and lines are stored as homogeneous triples normalized so that the
//! first nonzero coordinate equals one. Equality, hashing and ordering are
//! then plain structural comparisons.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders as `p/q`, including `q = 1`.
pub fn fmt_rat(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.25`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mut value = Rat::from_integer(whole.abs()) + Rat::new(frac, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// Truncates a nonnegative rational toward zero to `digits` decimals.
pub fn truncate_decimal(q: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (q.abs() * Rat::from_integer(scale)).to_integer();
    render_scaled(q.is_negative(), &scaled, digits)
}

fn render_scaled(negative: bool, scaled: &BigInt, digits: u32) -> String {
    let raw = scaled.to_string();
    let width = digits as usize + 1;
    let padded = format!("{raw:0>width$}");
    let (int_part, frac_part) = padded.split_at(padded.len() - digits as usize);
    let sign = if negative && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

pub fn to_f64(q: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// The nonnegative square root of a nonnegative rational, kept symbolically.
///
/// Comparisons against rationals are decided exactly by squaring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SqrtRat {
    square: Rat,
}

impl SqrtRat {
    pub fn new(square: Rat) -> Result<Self> {
        if square.is_negative() {
            return Err(Error::BadParameter(
                "square root of a negative rational".into(),
            ));
        }
        Ok(Self { square })
    }

    pub fn square(&self) -> &Rat {
        &self.square
    }

    /// Orders `sqrt(square)` against `q`.
    pub fn cmp_rat(&self, q: &Rat) -> Ordering {
        if q.is_negative() {
            return Ordering::Greater;
        }
        self.square.cmp(&(q * q))
    }

    /// The exact value when the square is the square of a rational.
    pub fn exact(&self) -> Option<Rat> {
        let n = self.square.numer();
        let d = self.square.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        (&rn * &rn == *n && &rd * &rd == *d).then(|| Rat::new(rn, rd))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.square).sqrt()
    }

    /// Truncation toward zero to `digits` decimals, computed with integer
    /// square roots (floor(sqrt(y)) = floor(sqrt(floor(y))) for y >= 0).
    pub fn truncate_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(2 * digits);
        let floor = (&self.square * Rat::from_integer(scale)).to_integer();
        render_scaled(false, &floor.sqrt(), digits)
    }
}

impl fmt::Display for SqrtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(q) => write!(f, "{}", fmt_rat(&q)),
            None => write!(f, "sqrt({})", fmt_rat(&self.square)),
        }
    }
}

type Triple = [Rat; 3];

fn canonicalize(mut v: Triple) -> Result<Triple> {
    let lead = v
        .iter()
        .find(|c| !c.is_zero())
        .cloned()
        .ok_or(Error::ZeroVector)?;
    if !lead.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &lead;
        }
    }
    Ok(v)
}

fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &Triple, b: &Triple) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn fmt_triple(v: &Triple, open: char, close: char, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{open}{}:{}:{}{close}", v[0], v[1], v[2])
}

/// A point `[x:y:z]` of the projective plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Triple,
}

impl ProjPoint {
    pub fn new(coords: [Rat; 3]) -> Result<Self> {
        Ok(Self {
            coords: canonicalize(coords)?,
        })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new([int(x), int(y), int(z)])
    }

    pub fn coords(&self) -> &[Rat; 3] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.coords, '[', ']', f)
    }
}

/// A line `ax + by + cz = 0`, stored by its coefficients `{a, b, c}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    coeffs: Triple,
}

impl ProjLine {
    pub fn new(coeffs: [Rat; 3]) -> Result<Self> {
        Ok(Self {
            coeffs: canonicalize(coeffs)?,
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new([int(a), int(b), int(c)])
    }

    pub fn coeffs(&self) -> &[Rat; 3] {
        &self.coeffs
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.coeffs, '{', '}', f)
    }
}

pub fn incident(p: &ProjPoint, l: &ProjLine) -> bool {
    dot(&p.coords, &l.coeffs).is_zero()
}

pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if p == q {
        return Err(Error::EqualPoints);
    }
    ProjLine::new(cross(&p.coords, &q.coords))
}

pub fn meet(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint> {
    if l1 == l2 {
        return Err(Error::EqualLines);
    }
    ProjPoint::new(cross(&l1.coeffs, &l2.coeffs))
}
