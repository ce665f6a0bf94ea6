//! Property tests over randomly built expressions and function families.

use cheby_core::bounds::{convex_derivatives, h_constant, hwang_rhs, TheoremId};
use cheby_core::calculus::{beta, chebyshev_t, lp_norm, profile, total_variation, Exponent};
use cheby_core::expr::{differentiate, parse, Expr};
use cheby_core::verify::{
    chain_ordered, declared_hypothesis_holds, evaluate_bound, run_suite, Family, Shape,
    SuiteConfig,
};
use cheby_core::{Interval, DEFAULT_TOL};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Expression text over `x` built from total operations, so every
/// generated string parses and evaluates on [-2, 2].
fn smooth_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        (-3.0f64..3.0).prop_map(|c| format!("({c})")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} - {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} * {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} / (2 + ({b})^2))")),
            inner.clone().prop_map(|a| format!("sin({a})")),
            inner.clone().prop_map(|a| format!("cos({a})")),
            inner.clone().prop_map(|a| format!("exp(sin({a}))")),
            inner.clone().prop_map(|a| format!("sqrt(1 + ({a})^2)")),
            inner.clone().prop_map(|a| format!("ln(2 + cos({a}))")),
            (inner, 1u32..4).prop_map(|(a, n)| format!("({a})^{n}")),
        ]
    })
}

/// Like [`smooth_text`] but also uses kinks, signs and pieces.
fn any_text() -> impl Strategy<Value = String> {
    prop_oneof![
        smooth_text(),
        smooth_text().prop_map(|a| format!("abs({a})")),
        smooth_text().prop_map(|a| format!("sgn({a}) * 0.5")),
        (smooth_text(), smooth_text(), -1.5f64..1.5)
            .prop_map(|(a, b, c)| format!("piecewise{{[-2,{c}]: {a}; [{c},2]: {b}}}")),
    ]
}

fn eval_points(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| -1.9 + 3.8 * i as f64 / (n - 1) as f64)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn sample_pair(seed: u64, family_f: Family, family_g: Family) -> (Expr, Expr, Interval) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let iv = Interval::unit();
    let f = Shape::sample(family_f, 3, (0.0, 3.0), &mut rng).to_expr(&iv);
    let g = Shape::sample(family_g, 3, (0.0, 3.0), &mut rng).to_expr(&iv);
    (f, g, iv)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn printed_expression_reparses_to_same_values(text in any_text()) {
        let e = parse(&text).unwrap();
        let back = parse(&e.to_string()).unwrap();
        for t in eval_points(100) {
            match (e.eval(t), back.eval(t)) {
                (Ok(u), Ok(v)) => prop_assert!(close(u, v, 1e-12), "{text} at {t}: {u} vs {v}"),
                (Err(_), Err(_)) => {}
                (u, v) => prop_assert!(false, "{text} at {t}: {u:?} vs {v:?}"),
            }
        }
    }

    #[test]
    fn derivative_matches_central_difference(text in smooth_text(), s in 0.0f64..1.0) {
        let e = parse(&text).unwrap();
        let d = differentiate(&e).unwrap();
        let t = -1.5 + 3.0 * s;
        let h = 1e-6;
        let fd = (e.eval(t + h).unwrap() - e.eval(t - h).unwrap()) / (2.0 * h);
        let exact = d.eval(t).unwrap();
        // Central differences lose about eps·|f|/h to rounding.
        let scale = e.eval(t).unwrap().abs().max(1.0);
        prop_assert!(
            (exact - fd).abs() <= 1e-6 * exact.abs().max(scale),
            "{text} at {t}: {exact} vs {fd}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functional_is_symmetric_and_shift_invariant(
        seed in any::<u64>(),
        c in -5.0f64..5.0,
    ) {
        let (f, g, iv) = sample_pair(seed, Family::SmoothGeneral, Family::SmoothGeneral);
        let t = chebyshev_t(&f, &g, &iv, DEFAULT_TOL).unwrap();
        let swapped = chebyshev_t(&g, &f, &iv, DEFAULT_TOL).unwrap();
        let shifted = chebyshev_t(&(f + Expr::from(c)), &g, &iv, DEFAULT_TOL).unwrap();
        prop_assert!((t - swapped).abs() <= 1e-9);
        prop_assert!((t - shifted).abs() <= 1e-9);
    }

    #[test]
    fn variation_dominates_endpoint_change(text in any_text()) {
        let e = parse(&text).unwrap();
        let iv = Interval::new(-1.9, 1.9).unwrap();
        if let (Ok(tv), Ok(fa), Ok(fb)) =
            (total_variation(&e, &iv, DEFAULT_TOL), e.eval(iv.a()), e.eval(iv.b()))
        {
            prop_assert!(tv >= (fb - fa).abs() - 1e-9, "{text}: {tv} < |{fb} - {fa}|");
        }
    }

    #[test]
    fn normalized_norms_increase_with_exponent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = 0.5 + 2.0 * rand::Rng::random::<f64>(&mut rng);
        let iv = Interval::new(0.0, len).unwrap();
        let f = Shape::sample(Family::SmoothGeneral, 3, (0.0, 3.0), &mut rng).to_expr(&iv);
        let norms: Vec<f64> = [1.0, 2.0, 4.0, 8.0, f64::INFINITY]
            .iter()
            .map(|&p| {
                let n = lp_norm(&f, &iv, Exponent::from_f64(p), DEFAULT_TOL).unwrap();
                if p.is_finite() { n / len.powf(1.0 / p) } else { n }
            })
            .collect();
        for w in norms.windows(2) {
            prop_assert!(w[0] <= w[1] * (1.0 + 1e-9) + 1e-12, "{norms:?}");
        }
    }

    #[test]
    fn beta_is_symmetric(x in 0.05f64..20.0, y in 0.05f64..20.0) {
        let (u, v) = (beta(x, y).unwrap(), beta(y, x).unwrap());
        prop_assert!(close(u, v, 1e-14));
    }

    #[test]
    fn hwang_rhs_at_left_end_is_pointwise_bound(
        a in -3.0f64..3.0,
        len in 0.1f64..4.0,
        s in 0.01f64..1.0,
        d in prop::array::uniform3(-5.0f64..5.0),
    ) {
        let iv = Interval::new(a, a + len).unwrap();
        let t = a + s * len;
        let [da, dt, db] = d;
        let got = hwang_rhs(&iv, a, t, [da, da, dt, db]).unwrap();
        let b = a + len;
        let want = (t - a) * (b - t) / (6.0 * len) * da.abs()
            + (b - t) / 3.0 * dt.abs()
            + (b - t).powi(2) / (6.0 * len) * db.abs();
        prop_assert!((got - want).abs() <= 1e-10, "{got} vs {want}");
    }

    #[test]
    fn h_is_nondecreasing(b1 in 1.0f64..100.0, step in 0.0f64..50.0) {
        let (h1, h2) = (h_constant(b1).unwrap(), h_constant(b1 + step).unwrap());
        prop_assert!(h1 <= h2 + 1e-12);
        prop_assert!((1.0 / 12.0 - 1e-12..=0.125).contains(&h1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convex_derivative_bound_scales_quadratically(seed in any::<u64>(), lambda in 0.2f64..5.0) {
        // Shapes rebuilt on [0, λ] are λ f(s/λ) up to a constant: the same
        // derivative values on a stretched interval, so bound and
        // functional both gain λ².
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sf = Shape::sample(Family::ConvexPositiveDeriv, 3, (0.0, 3.0), &mut rng);
        let sg = Shape::sample(Family::ConvexPositiveDeriv, 3, (0.0, 3.0), &mut rng);
        let iv = Interval::unit();
        let wide = Interval::new(0.0, lambda).unwrap();
        let (f, g) = (sf.to_expr(&iv), sg.to_expr(&iv));
        let (fl, gl) = (sf.to_expr(&wide), sg.to_expr(&wide));
        let base = convex_derivatives(&profile(&f, &iv, DEFAULT_TOL), &profile(&g, &iv, DEFAULT_TOL)).unwrap();
        let scaled = convex_derivatives(&profile(&fl, &wide, DEFAULT_TOL), &profile(&gl, &wide, DEFAULT_TOL)).unwrap();
        let l2 = lambda * lambda;
        prop_assert!(close(scaled.value, l2 * base.value, 1e-8), "{} vs {}", scaled.value, l2 * base.value);
        let t = chebyshev_t(&f, &g, &iv, DEFAULT_TOL).unwrap();
        let tl = chebyshev_t(&fl, &gl, &wide, DEFAULT_TOL).unwrap();
        prop_assert!(close(tl, l2 * t, 1e-7));
    }

    #[test]
    fn generated_functions_pass_their_own_hypotheses(seed in any::<u64>(), which in 0usize..6) {
        let family = Family::ALL[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let iv = Interval::new(-1.0, 1.5).unwrap();
        let f = Shape::sample(family, 3, (0.0, 3.0), &mut rng).to_expr(&iv);
        prop_assert!(declared_hypothesis_holds(family, &profile(&f, &iv, DEFAULT_TOL)), "{family:?}: {f}");
    }

    #[test]
    fn chained_levels_are_ordered(seed in any::<u64>()) {
        let (f, g, iv) = sample_pair(seed, Family::ConvexPositiveDeriv, Family::ConvexPositiveDeriv);
        let (fp, gp) = (profile(&f, &iv, DEFAULT_TOL), profile(&g, &iv, DEFAULT_TOL));
        for th in [TheoremId::ConvexDerivatives, TheoremId::LipschitzConvex, TheoremId::VariationConvex] {
            if let Ok(Some(r)) = evaluate_bound(th, &fp, &gp, None, Exponent::Finite(2.0)) {
                prop_assert!(chain_ordered(&r), "{}: {} > {:?}", th.name(), r.value, r.secondary_value);
            }
        }
    }

    #[test]
    fn suites_are_reproducible(seed in any::<u64>()) {
        let cfg = SuiteConfig::new(TheoremId::Barnett, 4, seed);
        prop_assert_eq!(run_suite(&cfg), run_suite(&cfg));
    }
}
