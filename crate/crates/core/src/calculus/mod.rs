//! Numerical engine: quadrature, norms, variation, the Chebyshev
//! functional and function profiles.
//!
//! Everything here serves as the oracle the bounds are checked against,
//! so none of it depends on the bounds module. Error estimates are
//! heuristic quadrature estimates, not validated enclosures.

mod functional;
mod norms;
mod profile;
mod quad;
mod special;

use core::fmt;

use crate::expr::DiffError;
use crate::Interval;

pub use functional::{chebyshev_t, chebyshev_t_by_parts, first_moment, mean_difference};
pub use norms::{jumps, lp_norm, sup_abs, total_variation, Exponent, Jump, JUMP_EPS, SUP_MESH};
pub use profile::{profile, FuncProfile, Monotone, CONVEXITY_MESH, CONVEXITY_SLACK};
pub use quad::{integrate, integrate_fn, QuadError, QuadResult, MAX_SUBDIVISIONS};
pub use special::{beta, ln_gamma, DomainError};

pub(crate) use special::ln_beta_unchecked;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CalculusError {
    Quad(QuadError),
    Diff(DiffError),
    NotContained { outer: Interval, inner: Interval },
    /// The inner interval is as long as the outer one.
    SameLength,
    InvalidExponent(f64),
}

impl fmt::Display for CalculusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CalculusError::Quad(e) => e.fmt(f),
            CalculusError::Diff(e) => e.fmt(f),
            CalculusError::NotContained { outer, inner } => {
                write!(f, "{inner} is not contained in {outer}")
            }
            CalculusError::SameLength => {
                f.write_str("inner interval must be strictly shorter than the outer one")
            }
            CalculusError::InvalidExponent(p) => write!(f, "norm exponent must be >= 1, got {p}"),
        }
    }
}

impl core::error::Error for CalculusError {}

impl From<QuadError> for CalculusError {
    fn from(e: QuadError) -> Self {
        CalculusError::Quad(e)
    }
}

impl From<DiffError> for CalculusError {
    fn from(e: DiffError) -> Self {
        CalculusError::Diff(e)
    }
}

impl From<crate::expr::EvalError> for CalculusError {
    fn from(e: crate::expr::EvalError) -> Self {
        CalculusError::Quad(QuadError::Eval(e))
    }
}
