use alloc::vec::Vec;

use super::quad::integrate_fn;
use super::{CalculusError, QuadError};
use crate::expr::{breakpoints, derivative_ae, EvalError, Expr};
use crate::Interval;

/// Mesh size for sup-norm sampling.
pub const SUP_MESH: usize = 1025;
const SUP_REFINE: usize = 5;
/// Jumps smaller than this are read as continuity.
pub const JUMP_EPS: f64 = 1e-9;

/// Exponent of an `L_p` norm.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Maps `f64::INFINITY` to [`Exponent::Infinity`].
    pub fn from_f64(p: f64) -> Exponent {
        if p == f64::INFINITY {
            Exponent::Infinity
        } else {
            Exponent::Finite(p)
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

/// `(∫|f|^p)^(1/p)`, or the supremum of `|f|` for `p = ∞`.
pub fn lp_norm(f: &Expr, iv: &Interval, p: Exponent, tol: f64) -> Result<f64, CalculusError> {
    match p {
        Exponent::Infinity => Ok(sup_abs(f, iv)?),
        Exponent::Finite(p) if p >= 1.0 && p.is_finite() => {
            // Zeros of f are kinks of |f|^p; split there too.
            let splits = breakpoints(&f.clone().abs(), iv);
            let r = match integrate_fn(
                |t| Ok(libm::pow(f.eval(t)?.abs(), p)),
                iv,
                &splits,
                tol,
            ) {
                Ok(r) => r,
                // `tol` is meant for the norm. A large `|f|^p` pushes the
                // quadrature's roundoff floor past an absolute `tol`, so
                // judge the integral relative to its own size instead.
                Err(QuadError::ToleranceNotReached { best, .. })
                    if best.err_estimate <= tol * best.value.abs().max(1.0) =>
                {
                    best
                }
                Err(e) => return Err(e.into()),
            };
            Ok(libm::pow(r.value.max(0.0), 1.0 / p))
        }
        Exponent::Finite(p) => Err(CalculusError::InvalidExponent(p)),
    }
}

/// Supremum of `|f|` on `iv`.
///
/// Samples a uniform mesh, both sides of every breakpoint and the
/// endpoints, then refines the best few mesh samples by golden-section
/// search. It can only under-estimate the true supremum.
pub fn sup_abs(f: &Expr, iv: &Interval) -> Result<f64, EvalError> {
    let h = |t: f64| f.eval(t).map(f64::abs);
    let (a, b) = (iv.a(), iv.b());
    let step = iv.length() / (SUP_MESH - 1) as f64;

    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(SUP_MESH);
    for i in 0..SUP_MESH {
        let t = if i == SUP_MESH - 1 { b } else { a + step * i as f64 };
        samples.push((t, h(t)?));
    }
    let mut best = samples.iter().map(|s| s.1).fold(0.0, f64::max);

    let eps = 1e-12 * iv.length().max(1.0);
    for t in breakpoints(f, iv) {
        for s in [t - eps, t, t + eps] {
            if iv.contains(s) {
                if let Ok(v) = h(s) {
                    best = best.max(v);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&i, &j| samples[j].1.total_cmp(&samples[i].1));
    for &i in order.iter().take(SUP_REFINE) {
        let lo = samples[i.saturating_sub(1)].0;
        let hi = samples[(i + 1).min(samples.len() - 1)].0;
        best = best.max(golden_max(&h, lo, hi));
    }
    Ok(best)
}

fn golden_max(h: &impl Fn(f64) -> Result<f64, EvalError>, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let val = |t: f64| h(t).unwrap_or(f64::NEG_INFINITY);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (val(c), val(d));
    for _ in 0..80 {
        if hi - lo <= 1e-15 * hi.abs().max(1.0) {
            break;
        }
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = val(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = val(d);
        }
    }
    fc.max(fd).max(0.0)
}

/// A discontinuity of a piecewise-smooth function.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Jump {
    pub at: f64,
    /// Right limit minus left limit.
    pub height: f64,
}

/// Jumps of `f` at its interior breakpoints.
///
/// One-sided limits are extrapolated from a point at distance `δ` with a
/// first-order correction, so the estimate is `O(δ²)` off for smooth
/// pieces.
pub fn jumps(f: &Expr, iv: &Interval) -> Vec<Jump> {
    let df = derivative_ae(f);
    let bps = breakpoints(f, iv);
    let mut out = Vec::new();
    for (k, &t) in bps.iter().enumerate() {
        let left_room = t - if k == 0 { iv.a() } else { bps[k - 1] };
        let right_room = if k + 1 == bps.len() { iv.b() } else { bps[k + 1] } - t;
        let delta = (1e-7 * iv.length()).min(0.25 * left_room).min(0.25 * right_room);
        let limit = |s: f64, sign: f64| -> Option<f64> {
            let v = f.eval(s).ok()?;
            let slope = df.eval(s).ok()?;
            Some(v + sign * delta * slope)
        };
        let (Some(left), Some(right)) = (limit(t - delta, 1.0), limit(t + delta, -1.0)) else {
            continue;
        };
        let height = right - left;
        if height.abs() > JUMP_EPS {
            out.push(Jump { at: t, height });
        }
    }
    out
}

/// `∫|f'|` over the smooth pieces plus the absolute jump heights.
pub fn total_variation(f: &Expr, iv: &Interval, tol: f64) -> Result<f64, QuadError> {
    let df = derivative_ae(f);
    let mut splits = breakpoints(f, iv);
    // Sign changes of f' are kinks of |f'|.
    splits.extend(breakpoints(&df.clone().abs(), iv));
    let smooth = integrate_fn(|t| df.eval(t).map(f64::abs), iv, &splits, tol)?.value;
    let jumped: f64 = jumps(f, iv).iter().map(|j| j.height.abs()).sum();
    Ok(smooth + jumped)
}
