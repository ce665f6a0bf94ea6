//! The classical bounds: first Čebyšev inequality, the sign test, and the
//! three mean-difference estimates.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{BoundError, BoundResult, Direction, Hypothesis, TheoremId, Verdict};
use crate::calculus::FuncProfile;
use crate::Interval;

/// `|T(f,g)| <= (b-a)²/12 · ‖f'‖∞ ‖g'‖∞`.
pub fn chebyshev_first(fp: &FuncProfile, gp: &FuncProfile) -> Result<BoundResult, BoundError> {
    let id = TheoremId::ChebyshevFirst;
    let sf = fp.sup_norm_deriv().ok_or(BoundError::Unavailable {
        theorem: id,
        quantity: "‖f'‖∞",
    })?;
    let sg = gp.sup_norm_deriv().ok_or(BoundError::Unavailable {
        theorem: id,
        quantity: "‖g'‖∞",
    })?;
    let len = fp.interval().length();
    Ok(BoundResult::new(
        id,
        len * len / 12.0 * sf * sg,
        vec![
            Hypothesis::new("f' bounded", true),
            Hypothesis::new("g' bounded", true),
        ],
    ))
}

/// Sign of `T` for monotone pairs: nonnegative in the same sense,
/// nonpositive in opposite senses.
pub fn chebyshev_sign(fp: &FuncProfile, gp: &FuncProfile, t: f64) -> Verdict {
    let id = String::from(TheoremId::ChebyshevSign.name());
    match fp.monotone().same_sense(gp.monotone()) {
        Some(true) => Verdict::judge(id, t, 0.0, Direction::Lower, true),
        Some(false) => Verdict::judge(id, t, 0.0, Direction::Upper, true),
        None => Verdict::not_applicable(id, t, Direction::Lower),
    }
}

/// Length of the outer interval minus that of the inner one, after the
/// containment check.
fn excess(outer: &Interval, inner: &Interval) -> Result<f64, BoundError> {
    if !outer.contains_interval(inner) {
        return Err(BoundError::Argument("inner interval must lie inside the outer one"));
    }
    let d = outer.length() - inner.length();
    if !(d > 0.0) {
        return Err(BoundError::Argument(
            "inner interval must be strictly shorter than the outer one",
        ));
    }
    Ok(d)
}

/// Bound on the difference of the means of `f` over its profile interval
/// and over `inner`, from `‖f'‖∞`.
///
/// `value` carries the sharp midpoint-dependent constant, `secondary_value`
/// the uniform `1/2`.
pub fn barnett(fp: &FuncProfile, inner: &Interval) -> Result<BoundResult, BoundError> {
    let id = TheoremId::Barnett;
    let outer = fp.interval();
    let d = excess(outer, inner)?;
    let sup = fp.sup_norm_deriv().ok_or(BoundError::Unavailable {
        theorem: id,
        quantity: "‖f'‖∞",
    })?;
    let shift = outer.midpoint() - inner.midpoint();
    let value = (0.25 + shift * shift / (d * d)) * d * sup;
    Ok(
        BoundResult::new(id, value, vec![Hypothesis::new("f' bounded", true)])
            .with_secondary(0.5 * d * sup),
    )
}

/// The variation and Lipschitz branches of the mean-difference bound,
/// whichever are available.
pub fn cerone_dragomir(
    fp: &FuncProfile,
    inner: &Interval,
) -> Result<Vec<BoundResult>, BoundError> {
    let outer = fp.interval();
    let d = excess(outer, inner)?;
    let mut out = Vec::new();
    if let Some(v) = fp.total_variation() {
        let shift = (inner.midpoint() - outer.midpoint()).abs();
        out.push(BoundResult::new(
            TheoremId::CeroneDragomirVariation,
            (0.5 * d + shift) * v / outer.length(),
            vec![Hypothesis::new("f of bounded variation", true)],
        ));
    }
    if let Some(lip) = fp.lipschitz() {
        let left = inner.a() - outer.a();
        let right = outer.b() - inner.b();
        out.push(BoundResult::new(
            TheoremId::CeroneDragomirLipschitz,
            lip * (left * left + right * right) / (2.0 * d),
            vec![Hypothesis::new("f Lipschitz", true)],
        ));
    }
    if out.is_empty() {
        return Err(BoundError::Unavailable {
            theorem: TheoremId::CeroneDragomirVariation,
            quantity: "total variation and Lipschitz constant",
        });
    }
    Ok(out)
}

/// Weights of `|f'(x)|` and `|f'(y)|` in the convex-derivative
/// mean-difference bound.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KernelIJ {
    pub i: f64,
    pub j: f64,
}

/// The kernels `I(a,b,x,y)` and `J(a,b,x,y) = I(a,b,a+b-y,a+b-x)`.
///
/// With `u = x - a`, `ℓ = y - x`, `D = (b-a) - ℓ` and `L = b - a`,
///
/// ```text
/// I = u²ℓ/(LD) - u³ℓ/(3LD²) - uℓ/(2L) + ℓD/(6L) + u²/(3L)
/// ```
///
/// and `J` is the same expression in `v = b - y`. Reflecting the interval
/// swaps the roles of `x` and `y`, so `J` must be the mirror of `I`.
pub fn hwang_kernels(iv: &Interval, x: f64, y: f64) -> Result<KernelIJ, BoundError> {
    let (a, b) = (iv.a(), iv.b());
    if !(a <= x && x < y && y <= b) {
        return Err(BoundError::Argument("need a <= x < y <= b"));
    }
    let len = iv.length();
    let ell = y - x;
    let d = len - ell;
    if !(d > 0.0) {
        return Err(BoundError::Argument("x = a and y = b leave no room for the kernels"));
    }
    let kernel = |u: f64| {
        u * u * ell / (len * d) - u * u * u * ell / (3.0 * len * d * d) - u * ell / (2.0 * len)
            + ell * d / (6.0 * len)
            + u * u / (3.0 * len)
    };
    Ok(KernelIJ {
        i: kernel(x - a),
        j: kernel(b - y),
    })
}

/// Right side of the convex-derivative mean-difference bound given
/// `[|f'(a)|, |f'(x)|, |f'(y)|, |f'(b)|]`.
pub fn hwang_rhs(iv: &Interval, x: f64, y: f64, derivs: [f64; 4]) -> Result<f64, BoundError> {
    let k = hwang_kernels(iv, x, y)?;
    let len = iv.length();
    let u = x - iv.a();
    let v = iv.b() - y;
    let [da, dx, dy, db] = derivs.map(f64::abs);
    Ok(u * u / (6.0 * len) * da + k.i * dx + k.j * dy + v * v / (6.0 * len) * db)
}

/// Bound on the difference between the mean over the profile interval and
/// the mean over `[x, y]` when `|f'|` is convex.
pub fn hwang_dragomir(fp: &FuncProfile, x: f64, y: f64) -> Result<BoundResult, BoundError> {
    let id = TheoremId::HwangDragomir;
    let iv = fp.interval();
    let convex = fp.deriv_abs_convex().ok_or(BoundError::Unavailable {
        theorem: id,
        quantity: "f'",
    })?;
    let at = |t: f64| {
        fp.deriv_at(t).ok_or(BoundError::Unavailable {
            theorem: id,
            quantity: "f' at a kernel node",
        })
    };
    let derivs = [at(iv.a())?, at(x)?, at(y)?, at(iv.b())?];
    let value = hwang_rhs(iv, x, y, derivs)?;
    Ok(BoundResult::new(
        id,
        value,
        vec![Hypothesis::new("|f'| convex", convex)],
    ))
}
