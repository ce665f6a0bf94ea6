//! Bounds on `|T|` when `|g'|` (and sometimes `|f'|`) is convex. They use
//! endpoint derivative values in place of sup norms.

use alloc::vec;

use super::{BoundError, BoundResult, Hypothesis, TheoremId};
use crate::calculus::{ln_beta_unchecked, Exponent, FuncProfile};

/// `M = |f'(a)||g'(a)| + |f'(b)||g'(b)|` and
/// `N = |f'(a)||g'(b)| + |f'(b)||g'(a)|`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MNPair {
    pub m: f64,
    pub n: f64,
}

struct Ends {
    a: f64,
    b: f64,
}

impl Ends {
    fn max(&self) -> f64 {
        self.a.max(self.b)
    }

    fn sum(&self) -> f64 {
        self.a + self.b
    }
}

fn ends(p: &FuncProfile, theorem: TheoremId, quantity: &'static str) -> Result<Ends, BoundError> {
    let missing = BoundError::Unavailable { theorem, quantity };
    Ok(Ends {
        a: p.endpoint_deriv_a().ok_or(missing.clone())?.abs(),
        b: p.endpoint_deriv_b().ok_or(missing)?.abs(),
    })
}

fn convex_hyp(p: &FuncProfile, theorem: TheoremId, name: &'static str) -> Result<Hypothesis, BoundError> {
    let v = p.deriv_abs_convex().ok_or(BoundError::Unavailable {
        theorem,
        quantity: name,
    })?;
    Ok(Hypothesis::new(name, v))
}

pub fn mn_pair(fp: &FuncProfile, gp: &FuncProfile) -> Result<MNPair, BoundError> {
    let id = TheoremId::ConvexDerivatives;
    let f = ends(fp, id, "f' at the endpoints")?;
    let g = ends(gp, id, "g' at the endpoints")?;
    Ok(MNPair {
        m: f.a * g.a + f.b * g.b,
        n: f.a * g.b + f.b * g.a,
    })
}

/// `|T| <= (b-a)²/48 [M + N + |M - N|] <= (b-a)²/12 max|g'| max|f'|`, the
/// maxima taken over the endpoints.
pub fn convex_derivatives(fp: &FuncProfile, gp: &FuncProfile) -> Result<BoundResult, BoundError> {
    let id = TheoremId::ConvexDerivatives;
    let hf = convex_hyp(fp, id, "|f'| convex")?;
    let hg = convex_hyp(gp, id, "|g'| convex")?;
    let MNPair { m, n } = mn_pair(fp, gp)?;
    let f = ends(fp, id, "f' at the endpoints")?;
    let g = ends(gp, id, "g' at the endpoints")?;
    let len2 = fp.interval().length().powi(2);
    Ok(
        BoundResult::new(id, len2 / 48.0 * (m + n + (m - n).abs()), vec![hf, hg])
            .with_secondary(len2 / 12.0 * g.max() * f.max()),
    )
}

/// Lipschitz `f` with Lipschitz constant from the profile.
pub fn lipschitz_convex(fp: &FuncProfile, gp: &FuncProfile) -> Result<BoundResult, BoundError> {
    let lip = fp.lipschitz().ok_or(BoundError::Unavailable {
        theorem: TheoremId::LipschitzConvex,
        quantity: "Lipschitz constant of f",
    })?;
    lipschitz_convex_with(lip, gp)
}

/// `|T| <= L(b-a)²/24 [|g'(a)| + |g'(b)|] <= L(b-a)²/12 max|g'|` for an
/// `L`-Lipschitz `f`. With `L = ‖f'‖∞` this is the smooth variant.
pub fn lipschitz_convex_with(lip: f64, gp: &FuncProfile) -> Result<BoundResult, BoundError> {
    let id = TheoremId::LipschitzConvex;
    let hg = convex_hyp(gp, id, "|g'| convex")?;
    let g = ends(gp, id, "g' at the endpoints")?;
    let len2 = gp.interval().length().powi(2);
    Ok(BoundResult::new(
        id,
        lip * len2 / 24.0 * g.sum(),
        vec![Hypothesis::new("f Lipschitz", lip.is_finite()), hg],
    )
    .with_secondary(lip * len2 / 12.0 * g.max()))
}

/// Bounded-variation `f`; jumps allowed.
pub fn variation_convex(fp: &FuncProfile, gp: &FuncProfile) -> Result<BoundResult, BoundError> {
    let v = fp.total_variation().ok_or(BoundError::Unavailable {
        theorem: TheoremId::VariationConvex,
        quantity: "total variation of f",
    })?;
    variation_convex_with(v, gp)
}

/// `|T| <= (b-a)/16 [|g'(a)| + |g'(b)|] V <= (b-a)/8 max|g'| V` where `V`
/// is the total variation of `f`. Passing `‖f'‖₁` gives the smooth variant.
pub fn variation_convex_with(variation: f64, gp: &FuncProfile) -> Result<BoundResult, BoundError> {
    let id = TheoremId::VariationConvex;
    let hg = convex_hyp(gp, id, "|g'| convex")?;
    let g = ends(gp, id, "g' at the endpoints")?;
    let len = gp.interval().length();
    Ok(BoundResult::new(
        id,
        len / 16.0 * g.sum() * variation,
        vec![Hypothesis::new("f of bounded variation", variation.is_finite()), hg],
    )
    .with_secondary(len / 8.0 * g.max() * variation))
}

/// `h(β) = B(β+1, β+1)^{1/β} / 2`.
pub fn h_constant(beta: f64) -> Result<f64, BoundError> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(BoundError::Argument("h needs a finite positive β"));
    }
    Ok(0.5 * libm::exp(ln_beta_unchecked(beta + 1.0, beta + 1.0) / beta))
}

/// `|T| <= (b-a)^{1+1/β} h(β) max|g'| ‖f'‖_α` with `1/α + 1/β = 1`.
///
/// `α = 1` and `α = ∞` use their closed forms `(b-a)/8` and `(b-a)²/12`.
pub fn holder_convex(
    fp: &FuncProfile,
    gp: &FuncProfile,
    alpha: Exponent,
) -> Result<BoundResult, BoundError> {
    let id = TheoremId::HolderConvex;
    let len = fp.interval().length();
    let factor = match alpha {
        Exponent::Infinity => len * len / 12.0,
        Exponent::Finite(a) if a == 1.0 => len / 8.0,
        Exponent::Finite(a) if a > 1.0 && a.is_finite() => {
            let beta = a / (a - 1.0);
            libm::pow(len, 1.0 + 1.0 / beta) * h_constant(beta)?
        }
        Exponent::Finite(_) => return Err(BoundError::Argument("α must be at least 1")),
    };
    let hg = convex_hyp(gp, id, "|g'| convex")?;
    let g = ends(gp, id, "g' at the endpoints")?;
    let norm = fp.lp_norm_deriv(alpha).ok_or(BoundError::Unavailable {
        theorem: id,
        quantity: "‖f'‖_α",
    })?;
    Ok(BoundResult::new(
        id,
        factor * g.max() * norm,
        vec![Hypothesis::new("f' in L_α", norm.is_finite()), hg],
    )
    .with_parameter(alpha.as_f64()))
}

/// `|T| <= (b-a)²/12 ‖g'‖∞ max{|f'(a)|, |f'(b)|}` for convex `|f'|`.
pub fn convex_sup(fp: &FuncProfile, gp: &FuncProfile) -> Result<BoundResult, BoundError> {
    let id = TheoremId::ConvexSup;
    let hf = convex_hyp(fp, id, "|f'| convex")?;
    let f = ends(fp, id, "f' at the endpoints")?;
    let sg = gp.sup_norm_deriv().ok_or(BoundError::Unavailable {
        theorem: id,
        quantity: "‖g'‖∞",
    })?;
    let len2 = fp.interval().length().powi(2);
    Ok(BoundResult::new(
        id,
        len2 / 12.0 * sg * f.max(),
        vec![hf, Hypothesis::new("g' bounded", true)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::profile;
    use crate::expr::parse;
    use crate::Interval;

    const TOL: f64 = 1e-10;

    fn prof(s: &str) -> FuncProfile {
        profile(&parse(s).unwrap(), &Interval::unit(), TOL)
    }

    fn close(x: f64, y: f64) -> bool {
        (x - y).abs() < 1e-12
    }

    #[test]
    fn mn_values() {
        let mn = mn_pair(&prof("x^2/6"), &prof("x")).unwrap();
        assert!(close(mn.m, 1.0 / 3.0) && close(mn.n, 1.0 / 3.0));
        let mn = mn_pair(&prof("x"), &prof("x")).unwrap();
        assert_eq!((mn.m, mn.n), (2.0, 2.0));
        let mn = mn_pair(&prof("(x*(1-x))^2"), &prof("x")).unwrap();
        assert_eq!((mn.m, mn.n), (0.0, 0.0));
    }

    #[test]
    fn convex_derivative_levels() {
        let r = convex_derivatives(&prof("x^2/6"), &prof("x")).unwrap();
        assert!(r.applicable);
        assert!(close(r.value, 1.0 / 72.0));
        let r = convex_derivatives(&prof("x"), &prof("x")).unwrap();
        assert!(close(r.secondary_value.unwrap(), 1.0 / 12.0));
        let r = convex_derivatives(&prof("5"), &prof("x")).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn lipschitz_levels() {
        let r = lipschitz_convex(&prof("x"), &prof("x^2/3")).unwrap();
        assert!(close(r.value, 1.0 / 36.0));
        let r = lipschitz_convex(&prof("x"), &prof("x")).unwrap();
        assert!(close(r.secondary_value.unwrap(), 1.0 / 12.0));
        let r = lipschitz_convex_with(2.0, &prof("3*x")).unwrap();
        assert!(close(r.value, 2.0 * 3.0 / 12.0));
        assert!(lipschitz_convex(&prof("sgn(x-0.5)"), &prof("x")).is_err());
    }

    #[test]
    fn variation_levels() {
        let step = prof("piecewise{[0,0.5]: -1; [0.5,1]: 1}");
        let r = variation_convex(&step, &prof("x^2/2")).unwrap();
        assert!((r.value - 0.125).abs() < 1e-10);
        let r = variation_convex(&step, &prof("x")).unwrap();
        assert!((r.secondary_value.unwrap() - 0.25).abs() < 1e-10);
        let r = variation_convex(&prof("1"), &prof("x")).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn variation_first_level_is_beaten_off_centre() {
        // A unit jump at c against g = x²/2 gives T = (c − c³)/6; at
        // c = 1/√3 this is 1/(9√3), above the first-level value 1/16.
        let c = 1.0 / 3f64.sqrt();
        let f = format!("piecewise{{[0,{c}]: 0; [{c},1]: 1}}");
        let g = "x^2/2";
        let r = variation_convex(&prof(&f), &prof(g)).unwrap();
        assert!(r.applicable);
        assert!((r.value - 1.0 / 16.0).abs() < 1e-10);
        let iv = Interval::unit();
        let t = crate::calculus::chebyshev_t(&parse(&f).unwrap(), &parse(g).unwrap(), &iv, TOL).unwrap();
        assert!((t - 1.0 / (9.0 * 3f64.sqrt())).abs() < 1e-9);
        assert!(t / r.value > 1.026);
        assert!(t <= r.secondary_value.unwrap());
    }

    #[test]
    fn h_values() {
        assert!((h_constant(1.0).unwrap() - 1.0 / 12.0).abs() < 1e-14);
        assert!((h_constant(2.0).unwrap() - 0.5 / 30f64.sqrt()).abs() < 1e-14);
        let h = h_constant(100.0).unwrap();
        assert!(h > 1.0 / 12.0 && h < 0.125);
        assert!(h_constant(0.0).is_err());
        assert!(h_constant(-1.0).is_err());
    }

    #[test]
    fn holder_routing() {
        let (f, g) = (prof("x"), prof("x"));
        let r = holder_convex(&f, &g, Exponent::Infinity).unwrap();
        assert!(close(r.value, 1.0 / 12.0));
        let r = holder_convex(&f, &g, Exponent::Finite(2.0)).unwrap();
        assert!(close(r.value, 0.5 / 30f64.sqrt()));
        let r = holder_convex(&f, &g, Exponent::Finite(1.0)).unwrap();
        assert!(close(r.value, 0.125));
        assert_eq!(r.parameter, Some(1.0));
        assert!(holder_convex(&f, &g, Exponent::Finite(0.5)).is_err());
    }

    #[test]
    fn convex_sup_values() {
        let r = convex_sup(&prof("x"), &prof("x")).unwrap();
        assert!(close(r.value, 1.0 / 12.0));
        let r = convex_sup(&prof("x^2/6"), &prof("x")).unwrap();
        assert!(close(r.value, 1.0 / 36.0));
        let r = convex_sup(&prof("x"), &prof("7")).unwrap();
        assert_eq!(r.value, 0.0);
    }
}
