//! Exact JN-realisability decisions and order-detected slope intervals for
//! Seifert fibered pieces, cable spaces and cabled knots.
//!
//! Everything is computed over ℚ ∪ {∞} with arbitrary-precision integers; no
//! floating point is used anywhere.
//!
//! Module layout, bottom to top:
//!
//! - [`exact`]: extended rationals, slope sets on the projective circle,
//!   integer Möbius maps.
//! - [`seifert`]: normalisation of slope tuples and the derived quantities
//!   `r1, s0, b0, m0, m1`.
//! - [`jn`]: the realisability decision and the `b = 1` witness search.
//! - [`intervals`]: relative intervals `T` / `T~` and their cable-space
//!   specialisations.
//! - [`cable`]: Bézout parameters, basis changes and the cabling pipeline.
//! - [`oracle`]: brute-force checks used by the test suite; depends only on
//!   `exact`, `seifert` and `jn`.

pub mod cable;
pub mod exact;
pub mod intervals;
pub mod jn;
pub mod oracle;
pub mod seifert;

pub use exact::{Arc, Bound, ExtRational, IntMobius, SlopeSet, Span};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular matrix (determinant 0)")]
    SingularMatrix,
    #[error("slope coordinate must be finite here")]
    InfiniteSlope,
    #[error("gamma value {0} is not in (0,1)")]
    GammaOutOfRange(String),
    #[error("strict index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("unsupported arity: n+r = {0} after reduction with no integral entries (need at least 3)")]
    UnsupportedArity(usize),
    #[error("insufficient data: n + r1 + s0 = {0} < 2")]
    InsufficientData(usize),
    #[error("window closed on the {0} side")]
    WindowClosed(&'static str),
    #[error("invalid cable parameters: {0}")]
    InvalidParams(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
