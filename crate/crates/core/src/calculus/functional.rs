use alloc::vec::Vec;

use super::quad::{adaptive, integrate, AdaptiveError};
use super::{CalculusError, QuadError};
use crate::expr::{breakpoints, differentiate, Expr};
use crate::Interval;

/// `T(f, g) = (1/L)∫fg - (1/L)∫f · (1/L)∫g` with `L = b - a`.
///
/// Each of the three integrals runs at `tol / 4`.
pub fn chebyshev_t(f: &Expr, g: &Expr, iv: &Interval, tol: f64) -> Result<f64, QuadError> {
    let q = tol / 4.0;
    let len = iv.length();
    let fg = integrate(&(f.clone() * g.clone()), iv, q)?.value;
    let fi = integrate(f, iv, q)?.value;
    let gi = integrate(g, iv, q)?.value;
    Ok(fg / len - (fi / len) * (gi / len))
}

/// The functional through integration by parts,
///
/// ```text
/// T(f, g) = 1/L² ∫ [ (t - a) ∫_a^b g  -  L ∫_a^t g ] f'(t) dt,
/// ```
///
/// evaluated with a nested quadrature for the running integral of `g`.
/// It shares nothing with [`chebyshev_t`] beyond the quadrature rule and
/// serves as a cross-check of it.
pub fn chebyshev_t_by_parts(
    f: &Expr,
    g: &Expr,
    iv: &Interval,
    tol: f64,
) -> Result<f64, CalculusError> {
    let df = differentiate(f)?;
    let len = iv.length();
    let a = iv.a();
    let g_splits = breakpoints(g, iv);
    let g_total = integrate(g, iv, tol / 8.0)?.value;
    let inner_tol = tol / (8.0 * len.max(1.0));

    let mut splits: Vec<f64> = breakpoints(&df, iv);
    splits.extend_from_slice(&g_splits);

    let outer = adaptive(
        |t| -> Result<f64, QuadError> {
            let slope = df.eval(t)?;
            if slope == 0.0 {
                return Ok(0.0);
            }
            let running = Interval::new(a, t)
                .map(|sub| adaptive(|s| g.eval(s), &sub, &g_splits, inner_tol))
                .map_or(Ok(0.0), |r| r.map(|q| q.value).map_err(QuadError::from))?;
            Ok(((t - a) * g_total - len * running) * slope)
        },
        iv,
        &splits,
        tol * len * len / 4.0,
    )
    .map_err(|e| match e {
        AdaptiveError::Integrand(q) => q,
        AdaptiveError::InvalidTolerance(t) => QuadError::InvalidTolerance(t),
        AdaptiveError::ToleranceNotReached { best, tol } => {
            QuadError::ToleranceNotReached { best, tol }
        }
    })?;
    Ok(outer.value / (len * len))
}

/// `(1/(b-a))∫_a^b f - (1/(d-c))∫_c^d f` for `[c, d]` inside `[a, b]`.
pub fn mean_difference(
    f: &Expr,
    outer: &Interval,
    inner: &Interval,
    tol: f64,
) -> Result<f64, CalculusError> {
    if !outer.contains_interval(inner) {
        return Err(CalculusError::NotContained {
            outer: *outer,
            inner: *inner,
        });
    }
    if inner.length() >= outer.length() {
        return Err(CalculusError::SameLength);
    }
    let big = integrate(f, outer, tol / 2.0)?.value / outer.length();
    let small = integrate(f, inner, tol / 2.0)?.value / inner.length();
    Ok(big - small)
}

/// `∫ (t - (a+b)/2) f(t) dt`.
pub fn first_moment(f: &Expr, iv: &Interval, tol: f64) -> Result<f64, QuadError> {
    let centered = Expr::Var - Expr::Const(iv.midpoint());
    Ok(integrate(&(centered * f.clone()), iv, tol)?.value)
}
