//! Exact multi-point Seshadri constants of `O(1)` on the projective plane at
//! the singular points of line arrangements, with certificates, plus checks of
//! necessary inequalities for singular plane curves.

pub mod arrangement;
pub mod error;
pub mod inequalities;
pub mod io;
pub mod projective;
pub mod seshadri;

pub use arrangement::{singular_locus, ConfigPoint, IncidenceStructure};
pub use error::{Error, Result};
pub use projective::{ProjLine, ProjPoint, Rat, SqrtRat};
pub use seshadri::{resolve, CurveClass, Estimate};
