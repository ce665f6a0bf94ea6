use alloc::vec::Vec;
use core::cell::OnceCell;

use super::functional::first_moment;
use super::norms::{jumps, lp_norm, sup_abs, total_variation, Exponent, Jump, SUP_MESH};
use super::quad::integrate;
use crate::expr::{breakpoints, derivative_ae, EvalError, Expr};
use crate::Interval;

/// Uniform mesh size of the midpoint-convexity test.
pub const CONVEXITY_MESH: usize = 65;
/// Allowed excess of `h((s+t)/2)` over `(h(s)+h(t))/2`.
pub const CONVEXITY_SLACK: f64 = 1e-9;
const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Monotone {
    Increasing,
    Decreasing,
    /// Both nondecreasing and nonincreasing.
    Constant,
    No,
}

impl Monotone {
    /// True when some common sense of monotonicity fits both.
    pub fn same_sense(self, other: Monotone) -> Option<bool> {
        use Monotone::*;
        match (self, other) {
            (No, _) | (_, No) => None,
            (Constant, _) | (_, Constant) => Some(true),
            (a, b) => Some(a == b),
        }
    }
}

/// Scalar data about one function on one interval, computed on demand.
///
/// Derivative-based entries are `None` when the function jumps (it is
/// then not absolutely continuous) or when the derivative cannot be
/// evaluated where needed. Nothing here is fatal.
///
/// The `|f'|` convexity verdict is a falsifiable numeric proxy: midpoint
/// convexity over all pairs of a 65-point mesh plus breakpoints.
#[derive(Debug)]
pub struct FuncProfile {
    expr: Expr,
    interval: Interval,
    tol: f64,
    deriv: Option<Expr>,
    breakpoints: Vec<f64>,
    jumps: Vec<Jump>,
    sup_norm_deriv: OnceCell<Option<f64>>,
    total_variation: OnceCell<Option<f64>>,
    deriv_abs_convex: OnceCell<Option<bool>>,
    convex: OnceCell<bool>,
    concave: OnceCell<bool>,
    monotone: OnceCell<Monotone>,
    integral: OnceCell<Option<f64>>,
    first_moment: OnceCell<Option<f64>>,
}

/// Builds the profile of `f` on `iv` with quadrature tolerance `tol`.
pub fn profile(f: &Expr, iv: &Interval, tol: f64) -> FuncProfile {
    FuncProfile::new(f.clone(), *iv, tol)
}

impl FuncProfile {
    pub fn new(expr: Expr, interval: Interval, tol: f64) -> Self {
        let breakpoints = breakpoints(&expr, &interval);
        let jumps = jumps(&expr, &interval);
        let deriv = jumps.is_empty().then(|| derivative_ae(&expr));
        FuncProfile {
            expr,
            interval,
            tol,
            deriv,
            breakpoints,
            jumps,
            sup_norm_deriv: OnceCell::new(),
            total_variation: OnceCell::new(),
            deriv_abs_convex: OnceCell::new(),
            convex: OnceCell::new(),
            concave: OnceCell::new(),
            monotone: OnceCell::new(),
            integral: OnceCell::new(),
            first_moment: OnceCell::new(),
        }
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// The derivative, when the function is continuous.
    pub fn derivative(&self) -> Option<&Expr> {
        self.deriv.as_ref()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn has_jumps(&self) -> bool {
        !self.jumps.is_empty()
    }

    pub fn value_at(&self, t: f64) -> Option<f64> {
        self.expr.eval(t).ok()
    }

    pub fn value_a(&self) -> Option<f64> {
        self.value_at(self.interval.a())
    }

    pub fn value_b(&self) -> Option<f64> {
        self.value_at(self.interval.b())
    }

    pub fn deriv_at(&self, t: f64) -> Option<f64> {
        self.deriv.as_ref()?.eval(t).ok()
    }

    /// `f'(a)`.
    pub fn endpoint_deriv_a(&self) -> Option<f64> {
        self.deriv_at(self.interval.a())
    }

    /// `f'(b)`.
    pub fn endpoint_deriv_b(&self) -> Option<f64> {
        self.deriv_at(self.interval.b())
    }

    /// `max{|f'(a)|, |f'(b)|}`.
    pub fn endpoint_deriv_max(&self) -> Option<f64> {
        Some(self.endpoint_deriv_a()?.abs().max(self.endpoint_deriv_b()?.abs()))
    }

    /// `‖f'‖∞`, a mesh-and-refinement lower estimate.
    pub fn sup_norm_deriv(&self) -> Option<f64> {
        *self
            .sup_norm_deriv
            .get_or_init(|| sup_abs(self.deriv.as_ref()?, &self.interval).ok())
    }

    /// `‖f'‖_p`.
    pub fn lp_norm_deriv(&self, p: Exponent) -> Option<f64> {
        match p {
            Exponent::Infinity => self.sup_norm_deriv(),
            p => lp_norm(self.deriv.as_ref()?, &self.interval, p, self.tol).ok(),
        }
    }

    /// Total variation on the interval; jumps allowed.
    pub fn total_variation(&self) -> Option<f64> {
        *self
            .total_variation
            .get_or_init(|| total_variation(&self.expr, &self.interval, self.tol).ok())
    }

    /// Lipschitz constant `‖f'‖∞`; unavailable when the function jumps.
    pub fn lipschitz(&self) -> Option<f64> {
        if self.has_jumps() {
            None
        } else {
            self.sup_norm_deriv()
        }
    }

    /// Numeric verdict on convexity of `|f'|`.
    pub fn deriv_abs_convex(&self) -> Option<bool> {
        *self.deriv_abs_convex.get_or_init(|| {
            let d = self.deriv.as_ref()?;
            let pts = convexity_mesh(&self.interval, &breakpoints(d, &self.interval));
            Some(midpoint_convex(|t| d.eval(t).map(f64::abs), &pts))
        })
    }

    /// Numeric verdict on convexity of the function itself.
    pub fn convex(&self) -> bool {
        *self.convex.get_or_init(|| {
            let pts = convexity_mesh(&self.interval, &self.breakpoints);
            midpoint_convex(|t| self.expr.eval(t), &pts)
        })
    }

    pub fn concave(&self) -> bool {
        *self.concave.get_or_init(|| {
            let pts = convexity_mesh(&self.interval, &self.breakpoints);
            midpoint_convex(|t| self.expr.eval(t).map(|v| -v), &pts)
        })
    }

    /// Sign pattern of `f'` on a 1025-point mesh and around breakpoints,
    /// combined with the signs of the jumps.
    pub fn monotone(&self) -> Monotone {
        *self.monotone.get_or_init(|| self.compute_monotone())
    }

    fn compute_monotone(&self) -> Monotone {
        let d = derivative_ae(&self.expr);
        let iv = &self.interval;
        let eps = 1e-12 * iv.length().max(1.0);
        let step = iv.length() / (SUP_MESH - 1) as f64;
        let mut pts: Vec<f64> = (0..SUP_MESH).map(|i| iv.a() + step * i as f64).collect();
        pts.push(iv.b());
        for &t in &self.breakpoints {
            pts.extend([t - eps, t + eps]);
        }
        let (mut lo, mut hi) = (0.0f64, 0.0f64);
        for t in pts {
            if !iv.contains(t) {
                continue;
            }
            if let Ok(v) = d.eval(t) {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        for j in &self.jumps {
            lo = lo.min(j.height);
            hi = hi.max(j.height);
        }
        let up = lo >= -MONOTONE_SLACK;
        let down = hi <= MONOTONE_SLACK;
        match (up, down) {
            (true, true) => Monotone::Constant,
            (true, false) => Monotone::Increasing,
            (false, true) => Monotone::Decreasing,
            (false, false) => Monotone::No,
        }
    }

    /// `∫_a^b f`.
    pub fn integral(&self) -> Option<f64> {
        *self.integral.get_or_init(|| {
            integrate(&self.expr, &self.interval, self.tol)
                .ok()
                .map(|r| r.value)
        })
    }

    /// `∫ (t - (a+b)/2) f(t) dt`.
    pub fn first_moment(&self) -> Option<f64> {
        *self
            .first_moment
            .get_or_init(|| first_moment(&self.expr, &self.interval, self.tol).ok())
    }
}

fn convexity_mesh(iv: &Interval, extra: &[f64]) -> Vec<f64> {
    let step = iv.length() / (CONVEXITY_MESH - 1) as f64;
    let mut pts: Vec<f64> = (0..CONVEXITY_MESH - 1)
        .map(|i| iv.a() + step * i as f64)
        .collect();
    pts.push(iv.b());
    pts.extend(extra.iter().copied().filter(|t| iv.contains(*t)));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// `h((s+t)/2) <= (h(s)+h(t))/2 + slack` for every pair of points.
/// Points where `h` fails to evaluate are skipped.
pub(crate) fn midpoint_convex(h: impl Fn(f64) -> Result<f64, EvalError>, pts: &[f64]) -> bool {
    let vals: Vec<Option<f64>> = pts.iter().map(|&t| h(t).ok()).collect();
    for i in 0..pts.len() {
        let Some(hi) = vals[i] else { continue };
        for j in i + 1..pts.len() {
            let Some(hj) = vals[j] else { continue };
            if let Ok(hm) = h(0.5 * (pts[i] + pts[j])) {
                if hm > 0.5 * (hi + hj) + CONVEXITY_SLACK {
                    return false;
                }
            }
        }
    }
    true
}
