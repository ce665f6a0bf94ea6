//! Numerical evaluation of the Chebyshev functional
//!
//! ```text
//! T(f, g) = 1/(b-a) ∫ f g  -  1/(b-a) ∫ f  ·  1/(b-a) ∫ g
//! ```
//!
//! together with a catalog of sharp upper and lower bounds on it, the
//! hypothesis checks each bound needs, and a randomized harness that
//! verifies the bounds against an independent quadrature oracle.
//!
//! The crate is `no_std` and only needs `alloc`. Floating point
//! transcendental functions come from [`libm`].
//!
//! Modules, bottom up:
//!
//! - [`expr`]: parser, evaluator, symbolic derivative and breakpoint
//!   discovery for one-variable piecewise expressions.
//! - [`calculus`]: adaptive Gauss–Kronrod quadrature, norms, total
//!   variation, the functional itself and per-function profiles.
//! - [`bounds`]: one function per inequality in the catalog.
//! - [`verify`]: random function families, suites, the sharpness list,
//!   tightness search and the `h(β)` curve.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod calculus;
pub mod expr;
mod interval;
pub mod verify;

pub use interval::{Interval, IntervalError};

/// Default absolute quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Slack used for every inequality and equality comparison against the oracle.
pub const SLACK: f64 = 1e-7;
