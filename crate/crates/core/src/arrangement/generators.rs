//! Named arrangements.
//!
//! Arrangements with rational equations are built from coordinates and go
//! through [`singular_locus`]. CEVA is built combinatorially, and Klein,
//! Wiman and A1(15) are loaded from the bundled incidence data under
//! `data/` (see `tools/gen_bundled.py`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{singular_locus, IncidenceStructure, Metadata};
use crate::error::{Error, Result};
use crate::io::ArrangementFile;
use crate::projective::{incident, meet, ProjLine, ProjPoint};

pub(crate) const KLEIN_JSON: &str = include_str!("../../data/klein.json");
pub(crate) const WIMAN_JSON: &str = include_str!("../../data/wiman.json");
pub(crate) const A1_15_JSON: &str = include_str!("../../data/a1_15.json");

fn named(s: IncidenceStructure, name: String, source: &str) -> IncidenceStructure {
    s.with_metadata(Metadata {
        name: Some(name),
        source: Some(source.to_string()),
    })
}

fn lines(coeffs: &[[i64; 3]]) -> Vec<ProjLine> {
    coeffs
        .iter()
        .map(|&[a, b, c]| ProjLine::from_ints(a, b, c).expect("nonzero line"))
        .collect()
}

/// The n-th CEVA arrangement: the linear factors of
/// `(x^n - y^n)(y^n - z^n)(z^n - x^n)`.
///
/// Line ids: family XY is `0..n`, YZ is `n..2n`, ZX is `2n..3n`. Points are
/// the three vertices where a whole family meets, plus the triple points
/// `(XY, i), (YZ, j), (ZX, (i + j) mod n)`.
pub fn gen_ceva(n: usize) -> Result<IncidenceStructure> {
    if n < 3 {
        return Err(Error::BadParameter(format!("CEVA needs n >= 3, got {n}")));
    }
    let mut points: Vec<Vec<usize>> = (0..3).map(|f| (f * n..(f + 1) * n).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            points.push(vec![i, n + j, 2 * n + (i + j) % n]);
        }
    }
    let s = IncidenceStructure::from_incidence(3 * n, points, vec![])?;
    Ok(named(
        s,
        format!("ceva-{n}"),
        "CEVA arrangement (x^n-y^n)(y^n-z^n)(z^n-x^n)",
    ))
}

/// `d` lines in general position: `x + t y + t^2 z = 0` for `t = 0..d`.
/// Three such lines meet only if a Vandermonde determinant vanishes, so
/// every intersection is a double point.
pub fn gen_star(d: usize) -> Result<IncidenceStructure> {
    if d < 3 {
        return Err(Error::BadParameter(format!(
            "star arrangement needs d >= 3, got {d}"
        )));
    }
    let coeffs: Vec<[i64; 3]> = (0..d as i64).map(|t| [1, t, t * t]).collect();
    let s = singular_locus(&lines(&coeffs))?;
    Ok(named(s, format!("star-{d}"), "lines x + t y + t^2 z = 0"))
}

/// `d - 1` lines through `[0:0:1]` and the transversal `z = 0` as the last
/// line.
pub fn gen_quasipencil(d: usize) -> Result<IncidenceStructure> {
    if d < 3 {
        return Err(Error::BadParameter(format!(
            "quasipencil needs d >= 3, got {d}"
        )));
    }
    let mut coeffs: Vec<[i64; 3]> = (0..d as i64 - 1).map(|t| [t, -1, 0]).collect();
    coeffs.push([0, 0, 1]);
    let s = singular_locus(&lines(&coeffs))?;
    Ok(named(
        s,
        format!("quasipencil-{d}"),
        "pencil through [0:0:1] plus the line z = 0",
    ))
}

/// `d` lines through `[0:0:1]`.
pub fn gen_pencil(d: usize) -> Result<IncidenceStructure> {
    if d < 2 {
        return Err(Error::BadParameter(format!("pencil needs d >= 2, got {d}")));
    }
    let coeffs: Vec<[i64; 3]> = (0..d as i64).map(|t| [t, -1, 0]).collect();
    let s = singular_locus(&lines(&coeffs))?;
    Ok(named(s, format!("pencil-{d}"), "lines through [0:0:1]"))
}

/// The six lines joining four general points (4 triple, 3 double points).
pub fn gen_a1_6() -> Result<IncidenceStructure> {
    let s = singular_locus(&lines(&[
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, -1, 0],
        [0, 1, -1],
        [1, 0, -1],
    ]))?;
    Ok(named(
        s,
        "a1_6".into(),
        "complete quadrilateral on [1:0:0], [0:1:0], [0:0:1], [1:1:1]",
    ))
}

/// Square with vertices `(+-1, +-1)`: its four sides, four symmetry axes and
/// the line at infinity (3 quadruple, 4 triple, 6 double points).
///
/// Ids: `0..3` are the vertical lines `x = -1, 0, 1`, `3..6` the horizontal
/// ones, then `y = x`, `y = -x` and the line at infinity as 8.
pub fn gen_a1_9() -> Result<IncidenceStructure> {
    let s = singular_locus(&lines(&[
        [1, 0, 1],
        [1, 0, 0],
        [1, 0, -1],
        [0, 1, 1],
        [0, 1, 0],
        [0, 1, -1],
        [1, -1, 0],
        [1, 1, 0],
        [0, 0, 1],
    ]))?;
    Ok(named(
        s,
        "a1_9".into(),
        "sides and symmetry axes of a square plus the line at infinity",
    ))
}

fn bundled(json: &str) -> Result<IncidenceStructure> {
    let s = ArrangementFile::from_json(json)?.into_structure()?;
    let report = s.validate_counts();
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidStructure(format!(
            "bundled data fails validation: {v}"
        )));
    }
    Ok(s)
}

/// Regular pentagon sides, diagonals and axes (6 quintuple, 10 triple,
/// 15 double points), with the virtual lines `L1..L6` of the six-line cover.
pub fn gen_a1_15() -> Result<IncidenceStructure> {
    bundled(A1_15_JSON)
}

/// Klein's 21 lines (21 quadruple, 28 triple points).
pub fn gen_klein() -> Result<IncidenceStructure> {
    bundled(KLEIN_JSON)
}

/// Wiman's 45 lines (36 quintuple, 45 quadruple, 120 triple points).
pub fn gen_wiman() -> Result<IncidenceStructure> {
    bundled(WIMAN_JSON)
}

/// `d` random rational lines with only double points, deterministic per seed.
pub fn gen_generic(d: usize, seed: u64) -> Result<IncidenceStructure> {
    const MAX_DRAWS: usize = 100_000;
    if d < 3 {
        return Err(Error::BadParameter(format!(
            "generic arrangement needs d >= 3, got {d}"
        )));
    }
    let bound = 4 * d as i64 + 10;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<ProjLine> = Vec::with_capacity(d);
    let mut meets: Vec<ProjPoint> = Vec::new();
    let mut draws = 0;
    while chosen.len() < d {
        draws += 1;
        if draws > MAX_DRAWS {
            return Err(Error::BadParameter(format!(
                "could not draw {d} generic lines"
            )));
        }
        let (a, b, c) = (
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        );
        let Ok(line) = ProjLine::from_ints(a, b, c) else {
            continue;
        };
        if chosen.contains(&line) || meets.iter().any(|p| incident(p, &line)) {
            continue;
        }
        for l in &chosen {
            meets.push(meet(l, &line)?);
        }
        chosen.push(line);
    }
    let s = singular_locus(&chosen)?;
    Ok(named(
        s,
        format!("generic-{d}-seed-{seed}"),
        "random rational lines in general position",
    ))
}
