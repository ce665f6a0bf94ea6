//! One-sided bounds on `T` for pairs of convex or concave functions.

use alloc::string::String;
use alloc::vec;

use super::{BoundError, BoundResult, Direction, Hypothesis, TheoremId, Verdict};
use crate::calculus::FuncProfile;

/// First moments below this are read as zero by [`atkinson`].
pub const ATKINSON_MOMENT_EPS: f64 = 1e-8;

fn end_rise(p: &FuncProfile, theorem: TheoremId) -> Result<f64, BoundError> {
    let missing = BoundError::Unavailable {
        theorem,
        quantity: "endpoint values",
    };
    Ok(p.value_b().ok_or(missing.clone())? - p.value_a().ok_or(missing)?)
}

/// `T <= (f(b)-f(a))(g(b)-g(a))/12` for convex `f` and `g`.
pub fn convex_upper(fp: &FuncProfile, gp: &FuncProfile) -> Result<BoundResult, BoundError> {
    let id = TheoremId::ConvexUpper;
    let value = end_rise(fp, id)? * end_rise(gp, id)? / 12.0;
    Ok(BoundResult::new(
        id,
        value,
        vec![
            Hypothesis::new("f convex", fp.convex()),
            Hypothesis::new("g convex", gp.convex()),
        ],
    ))
}

/// `T >= (f(b)-f(a))(g(b)-g(a))/12` for concave `f` and `g`.
pub fn concave_lower(fp: &FuncProfile, gp: &FuncProfile) -> Result<BoundResult, BoundError> {
    let id = TheoremId::ConcaveLower;
    let value = end_rise(fp, id)? * end_rise(gp, id)? / 12.0;
    Ok(BoundResult::new(
        id,
        value,
        vec![
            Hypothesis::new("f concave", fp.concave()),
            Hypothesis::new("g concave", gp.concave()),
        ],
    ))
}

/// `T >= 12/(b-a)⁴ · ∫(t-m)f · ∫(t-m)g` for convex `f`, `g`, `m` the
/// midpoint. Equality when either is linear.
///
/// The fourth power matches the normalization of `T`: for `f = g = t` on
/// `[0, L]` both sides equal `L²/12`.
pub fn lupas(fp: &FuncProfile, gp: &FuncProfile) -> Result<BoundResult, BoundError> {
    let id = TheoremId::Lupas;
    let missing = BoundError::Unavailable {
        theorem: id,
        quantity: "first moment",
    };
    let mf = fp.first_moment().ok_or(missing.clone())?;
    let mg = gp.first_moment().ok_or(missing)?;
    let len = fp.interval().length();
    Ok(BoundResult::new(
        id,
        12.0 / (len * len * len * len) * mf * mg,
        vec![
            Hypothesis::new("f convex", fp.convex()),
            Hypothesis::new("g convex", gp.convex()),
        ],
    ))
}

/// `T >= 0` for convex `f`, `g` when `g` has zero first moment about the
/// midpoint; not applicable otherwise.
pub fn atkinson(fp: &FuncProfile, gp: &FuncProfile, t: f64) -> Verdict {
    let id = String::from(TheoremId::Atkinson.name());
    let centered = gp
        .first_moment()
        .is_some_and(|m| m.abs() <= ATKINSON_MOMENT_EPS);
    if !centered {
        return Verdict::not_applicable(id, t, Direction::Lower);
    }
    Verdict::judge(id, t, 0.0, Direction::Lower, fp.convex() && gp.convex())
}
