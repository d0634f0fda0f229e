use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("all homogeneous coordinates are zero")]
    ZeroVector,
    #[error("the two points are equal; no unique line passes through them")]
    EqualPoints,
    #[error("the two lines are equal; they have no unique meet")]
    EqualLines,
    #[error("lines {first} and {second} coincide")]
    DuplicateLine { first: usize, second: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("invalid incidence structure: {0}")]
    InvalidStructure(String),
    #[error("the arrangement is a pencil of lines")]
    IsPencil,
    #[error("curve class has zero total multiplicity at the configuration")]
    ZeroMultiplicity,
    #[error("curve class refers to unknown configuration point {0}")]
    UnknownPoint(usize),
    #[error("curve class violates the genus bound: sum n(n-1) = {lhs} > e(e-1) = {rhs}")]
    NotIrreducibleCandidate { lhs: u128, rhs: u128 },
    #[error("divisor does not cover configuration point {0}")]
    NotCovering(usize),
    #[error("cover search exceeded its node limit of {0}")]
    Timeout(u64),
    #[error("Milnor numbers are required for this check")]
    MissingMilnor,
    #[error("index {index} out of range for {len} singular points")]
    BadIndex { index: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
