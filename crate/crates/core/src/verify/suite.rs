use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::families::{pick, random_interval, Family, Shape};
use crate::bounds::{self, BoundError, BoundResult, Direction, Status, TheoremId, Verdict};
use crate::calculus::{chebyshev_t, mean_difference, profile, Exponent, FuncProfile};
use crate::expr::Expr;
use crate::{Interval, DEFAULT_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub theorem: TheoremId,
    pub cases: usize,
    pub seed: u64,
    /// Exponent for [`TheoremId::HolderConvex`].
    pub alpha: Exponent,
    pub tol: f64,
    /// Atoms per generated function.
    pub size: usize,
    pub coeff_range: (f64, f64),
    /// Forces the families of `f` and `g` instead of the theorem's mix.
    pub families: Option<(Family, Family)>,
}

impl SuiteConfig {
    pub fn new(theorem: TheoremId, cases: usize, seed: u64) -> Self {
        SuiteConfig {
            theorem,
            cases,
            seed,
            alpha: Exponent::Finite(2.0),
            tol: DEFAULT_TOL,
            size: 3,
            coeff_range: (0.0, 3.0),
            families: None,
        }
    }
}

/// Everything about one case, for callers that want more than the verdict.
#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub index: usize,
    pub f: Expr,
    pub g: Expr,
    pub interval: Interval,
    /// Inner interval of the mean-difference bounds.
    pub inner: Option<Interval>,
    pub result: Option<BoundResult>,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Summary {
    pub holds: usize,
    pub violated: usize,
    pub hypotheses_not_met: usize,
}

pub fn summarize(verdicts: &[Verdict]) -> Summary {
    let mut s = Summary::default();
    for v in verdicts {
        match v.status {
            Status::Holds => s.holds += 1,
            Status::Violated => s.violated += 1,
            Status::HypothesesNotMet => s.hypotheses_not_met += 1,
        }
    }
    s
}

/// Generator for case `index`: the seed picks the key, the index the
/// stream, so cases can run in any order.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn sample(family: Family, cfg: &SuiteConfig, rng: &mut impl Rng) -> Shape {
    let mut s = Shape::sample(family, cfg.size, cfg.coeff_range, rng);
    if family == Family::ConvexPositiveDeriv {
        s.negate = rng.random_bool(0.5);
    }
    s
}

const GENERAL: &[Family] = &[
    Family::SmoothGeneral,
    Family::ConvexPiecewiseLinear,
    Family::ConvexPositiveDeriv,
];
const CONVEX_DERIV: &[Family] = &[Family::ConvexPositiveDeriv, Family::Linear];
const VARIATION: &[Family] = &[
    Family::StepFunction,
    Family::SmoothGeneral,
    Family::ConvexPiecewiseLinear,
];
const CONVEX: &[Family] = &[
    Family::ConvexPositiveDeriv,
    Family::ConvexPiecewiseLinear,
    Family::Linear,
];
const CONCAVE: &[Family] = &[Family::Concave, Family::ConvexPiecewiseLinear, Family::Linear];
const MONOTONE: &[Family] = &[Family::ConvexPositiveDeriv, Family::StepFunction, Family::Linear];

/// Families of `f` and `g` each theorem is exercised on.
pub fn default_families(theorem: TheoremId) -> (&'static [Family], &'static [Family]) {
    use TheoremId::*;
    match theorem {
        ChebyshevFirst => (GENERAL, GENERAL),
        ChebyshevSign => (MONOTONE, MONOTONE),
        Barnett | CeroneDragomirLipschitz => (GENERAL, GENERAL),
        CeroneDragomirVariation => (VARIATION, VARIATION),
        HwangDragomir => (CONVEX_DERIV, CONVEX_DERIV),
        ConvexDerivatives => (CONVEX_DERIV, CONVEX_DERIV),
        LipschitzConvex | HolderConvex => (GENERAL, CONVEX_DERIV),
        VariationConvex => (VARIATION, CONVEX_DERIV),
        ConvexSup => (CONVEX_DERIV, GENERAL),
        ConvexUpper | Lupas | Atkinson => (CONVEX, CONVEX),
        ConcaveLower => (CONCAVE, CONCAVE),
    }
}

/// Adjusts a sampled shape so it meets the theorem's hypothesis.
pub(crate) fn conform(theorem: TheoremId, shape: &mut Shape, rng: &mut impl Rng) {
    match theorem {
        TheoremId::ChebyshevSign => shape.make_monotone(rng.random_bool(0.5)),
        TheoremId::ConvexUpper | TheoremId::Lupas | TheoremId::Atkinson => shape.negate = false,
        TheoremId::ConcaveLower => {
            shape.negate = shape.family == Family::ConvexPiecewiseLinear;
        }
        _ => {}
    }
}

/// A convex function even about the midpoint of `iv`, so its first moment
/// vanishes.
pub(crate) fn symmetric_convex(iv: &Interval, cfg: &SuiteConfig, rng: &mut impl Rng) -> Expr {
    let m = iv.midpoint();
    let half = 0.5 * iv.length();
    let hi = cfg.coeff_range.1;
    let mut e = Expr::Const(rng.random_range(-hi..=hi))
        + Expr::Const(rng.random_range(0.0..=hi) / (half * half))
            * Expr::pow(Expr::Var - Expr::Const(m), 2.0);
    for _ in 0..cfg.size {
        let h = rng.random_range(0.0..half);
        let c = rng.random_range(0.0..=hi);
        e = e
            + Expr::Const(c)
                * ((Expr::Var - Expr::Const(m - h)).abs() + (Expr::Var - Expr::Const(m + h)).abs());
    }
    e
}

/// Random `[c, d]` inside `iv`, shorter than it; an endpoint is pinned
/// to the outer one a fifth of the time each.
pub(crate) fn random_inner(iv: &Interval, rng: &mut impl Rng) -> Interval {
    let len = iv.length();
    loop {
        let mut u = rng.random::<f64>();
        let mut v = rng.random::<f64>();
        if u > v {
            core::mem::swap(&mut u, &mut v);
        }
        match rng.random_range(0..5) {
            0 => u = 0.0,
            1 => v = 1.0,
            _ => {}
        }
        if v - u > 1e-3 && v - u < 1.0 - 1e-3 {
            return Interval::new(iv.a() + u * len, iv.a() + v * len).expect("ordered");
        }
    }
}

/// Bound of one theorem on one pair; sign and moment tests evaluate to
/// `None` since they only give a verdict.
pub fn evaluate_bound(
    theorem: TheoremId,
    fp: &FuncProfile,
    gp: &FuncProfile,
    inner: Option<&Interval>,
    alpha: Exponent,
) -> Result<Option<BoundResult>, BoundError> {
    use TheoremId::*;
    let need_inner = || inner.ok_or(BoundError::Argument("inner interval required"));
    let r = match theorem {
        ChebyshevFirst => bounds::chebyshev_first(fp, gp)?,
        ChebyshevSign | Atkinson => return Ok(None),
        Barnett => bounds::barnett(fp, need_inner()?)?,
        CeroneDragomirVariation | CeroneDragomirLipschitz => {
            bounds::cerone_dragomir(fp, need_inner()?)?
                .into_iter()
                .find(|r| r.theorem == theorem)
                .ok_or(BoundError::Unavailable {
                    theorem,
                    quantity: "the branch's profile data",
                })?
        }
        HwangDragomir => {
            let i = need_inner()?;
            bounds::hwang_dragomir(fp, i.a(), i.b())?
        }
        ConvexDerivatives => bounds::convex_derivatives(fp, gp)?,
        LipschitzConvex => bounds::lipschitz_convex(fp, gp)?,
        VariationConvex => bounds::variation_convex(fp, gp)?,
        HolderConvex => bounds::holder_convex(fp, gp, alpha)?,
        ConvexSup => bounds::convex_sup(fp, gp)?,
        ConvexUpper => bounds::convex_upper(fp, gp)?,
        ConcaveLower => bounds::concave_lower(fp, gp)?,
        Lupas => bounds::lupas(fp, gp)?,
    };
    Ok(Some(r))
}

/// The quantity a theorem bounds: `T(f, g)` or a difference of means.
pub fn measure(
    theorem: TheoremId,
    f: &Expr,
    g: &Expr,
    iv: &Interval,
    inner: Option<&Interval>,
    tol: f64,
) -> Option<f64> {
    if theorem.is_mean_difference() {
        mean_difference(f, iv, inner?, tol).ok()
    } else {
        chebyshev_t(f, g, iv, tol).ok()
    }
}

/// Verdict of `theorem` on a given pair.
pub fn check_pair(
    theorem: TheoremId,
    case_id: String,
    f: &Expr,
    g: &Expr,
    iv: &Interval,
    inner: Option<&Interval>,
    alpha: Exponent,
    tol: f64,
) -> (Option<BoundResult>, Verdict) {
    let fp = profile(f, iv, tol);
    let gp = profile(g, iv, tol);
    let direction = theorem.direction();
    let Some(measured) = measure(theorem, f, g, iv, inner, tol) else {
        return (None, Verdict::not_applicable(case_id, f64::NAN, direction));
    };
    match theorem {
        TheoremId::ChebyshevSign => {
            let mut v = bounds::chebyshev_sign(&fp, &gp, measured);
            v.case_id = case_id;
            return (None, v);
        }
        TheoremId::Atkinson => {
            let mut v = bounds::atkinson(&fp, &gp, measured);
            v.case_id = case_id;
            return (None, v);
        }
        _ => {}
    }
    match evaluate_bound(theorem, &fp, &gp, inner, alpha) {
        Ok(Some(r)) => {
            let v = Verdict::judge(case_id, measured, r.value, direction, r.applicable);
            (Some(r), v)
        }
        _ => (None, Verdict::not_applicable(case_id, measured, direction)),
    }
}

pub fn case_id(theorem: TheoremId, seed: u64, index: usize) -> String {
    format!("{theorem}/{seed}/{index}")
}

/// Case `index` of a suite. Pure in `(cfg, index)`.
pub fn run_case(cfg: &SuiteConfig, index: usize) -> CaseOutcome {
    let th = cfg.theorem;
    let mut rng = case_rng(cfg.seed, index as u64);
    let iv = random_interval(&mut rng);
    let (ff, gf) = default_families(th);
    let (f_family, g_family) = cfg
        .families
        .unwrap_or_else(|| (pick(&mut rng, ff), pick(&mut rng, gf)));
    let mut fs = sample(f_family, cfg, &mut rng);
    conform(th, &mut fs, &mut rng);
    let f = fs.to_expr(&iv);
    let g = if th == TheoremId::Atkinson && cfg.families.is_none() {
        symmetric_convex(&iv, cfg, &mut rng)
    } else {
        let mut gs = sample(g_family, cfg, &mut rng);
        conform(th, &mut gs, &mut rng);
        gs.to_expr(&iv)
    };
    let inner = (th.is_mean_difference()).then(|| random_inner(&iv, &mut rng));
    let id = case_id(th, cfg.seed, index);
    let (result, verdict) = check_pair(th, id, &f, &g, &iv, inner.as_ref(), cfg.alpha, cfg.tol);
    CaseOutcome {
        index,
        f,
        g,
        interval: iv,
        inner,
        result,
        verdict,
    }
}

/// All cases of a suite, in index order.
pub fn run_suite_detailed(cfg: &SuiteConfig) -> Vec<CaseOutcome> {
    (0..cfg.cases).map(|i| run_case(cfg, i)).collect()
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<Verdict> {
    (0..cfg.cases).map(|i| run_case(cfg, i).verdict).collect()
}

/// True when a chained result has its sharper level below the coarser one.
pub fn chain_ordered(r: &BoundResult) -> bool {
    r.secondary_value.is_none_or(|s| r.value <= s + 1e-12)
}

/// `|T|`/bound for absolute bounds, the directed analogue for one-sided
/// ones. `None` for inapplicable cases and for denominators at or below
/// the comparison slack, where rounding in `T` swamps the quotient; an
/// infinite ratio marks a violation with such a denominator.
pub fn tightness_ratio(v: &Verdict) -> Option<f64> {
    const TINY: f64 = crate::SLACK;
    if v.status == Status::HypothesesNotMet || !v.measured.is_finite() || !v.bound.is_finite() {
        return None;
    }
    let (num, den) = match v.direction {
        Direction::Abs => (v.measured.abs(), v.bound),
        Direction::Upper => (v.measured, v.bound),
        Direction::Lower => (v.bound, v.measured),
        Direction::Equal => return None,
    };
    if den > TINY {
        Some(num / den)
    } else if v.status == Status::Violated {
        Some(f64::INFINITY)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_order_independent() {
        let cfg = SuiteConfig::new(TheoremId::ConvexDerivatives, 12, 99);
        let forward = run_suite(&cfg);
        let again = run_suite(&cfg);
        assert_eq!(forward, again);
        let backward: Vec<Verdict> = (0..12).rev().map(|i| run_case(&cfg, i).verdict).collect();
        let mut backward = backward;
        backward.reverse();
        assert_eq!(forward, backward);
    }

    #[test]
    fn small_suites_are_applicable_and_hold() {
        for th in [
            TheoremId::ChebyshevFirst,
            TheoremId::Barnett,
            TheoremId::ConvexDerivatives,
            TheoremId::LipschitzConvex,
            TheoremId::ConvexSup,
            TheoremId::Lupas,
            TheoremId::Atkinson,
            TheoremId::ChebyshevSign,
        ] {
            let s = summarize(&run_suite(&SuiteConfig::new(th, 20, 5)));
            assert_eq!(s.holds, 20, "{th}: {s:?}");
        }
    }

    #[test]
    fn ratio_directions() {
        let v = Verdict::judge("c".into(), -0.5, 1.0, Direction::Abs, true);
        assert_eq!(tightness_ratio(&v), Some(0.5));
        let v = Verdict::judge("c".into(), 0.5, 0.25, Direction::Lower, true);
        assert_eq!(tightness_ratio(&v), Some(0.5));
        let v = Verdict::judge("c".into(), 0.0, 0.0, Direction::Abs, true);
        assert_eq!(tightness_ratio(&v), None);
        let v = Verdict::judge("c".into(), 0.1, 0.0, Direction::Abs, true);
        assert_eq!(tightness_ratio(&v), Some(f64::INFINITY));
    }
}
