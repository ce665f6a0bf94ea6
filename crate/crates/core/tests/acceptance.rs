//! Acceptance criteria, one printed PASS/FAIL line each.
//!
//! Run with `cargo test -p cheby-core --test acceptance -- --nocapture`.

use std::time::Instant;

use cheby_core::bounds::{h_constant, Status, TheoremId};
use cheby_core::calculus::{
    beta, chebyshev_t, chebyshev_t_by_parts, integrate, total_variation, Exponent,
};
use cheby_core::expr::parse;
use cheby_core::verify::{
    chain_ordered, h_curve, run_case, sharpness_suite, summarize, tightness_search, CaseOutcome,
    Family, SearchConfig, Shape, SuiteConfig, WITNESSES,
};
use cheby_core::{Interval, DEFAULT_TOL, SLACK};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SEED: u64 = 20_240_601;
const CASES: usize = 1000;
const SEARCH_ITERATIONS: usize = 10_000;

/// Claims refuted by explicit counterexamples, keyed by criterion:
/// convex-upper by f = g = x² on [0,1] (T = 4/45 > 1/12), the first level
/// of variation-convex by a unit jump at 1/√3 against g = x²/2 (ratio
/// ≈ 1.026). Their entries still print FAIL; the test only demands that
/// every other entry passes and that these keep failing.
const REFUTED: [(u32, TheoremId); 3] = [
    (2, TheoremId::ConvexUpper),
    (7, TheoremId::ConvexUpper),
    (7, TheoremId::VariationConvex),
];

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    /// Theorems whose entries failed; empty when the failure is not tied
    /// to a single theorem.
    failing: Vec<TheoremId>,
    details: Vec<String>,
}

impl Outcome {
    fn new(id: u32, title: &'static str, pass: bool, details: Vec<String>) -> Self {
        Outcome { id, title, pass, failing: Vec::new(), details }
    }

    /// Failing entries that are not on the refuted list.
    fn unexplained(&self) -> bool {
        !self.pass
            && (self.failing.is_empty()
                || self.failing.iter().any(|t| !REFUTED.contains(&(self.id, *t))))
    }

    fn print(&self) {
        let tag = match (self.pass, self.unexplained()) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (refuted claim only)",
        };
        println!("{tag} [{}] {}", self.id, self.title);
        for d in &self.details {
            println!("       {d}");
        }
    }
}

fn run_parallel(cfg: &SuiteConfig) -> Vec<CaseOutcome> {
    (0..cfg.cases).into_par_iter().map(|i| run_case(cfg, i)).collect()
}

fn sharpness() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (w, v) in WITNESSES.iter().zip(sharpness_suite(DEFAULT_TOL)) {
        let gap = (v.measured - v.bound).abs();
        let target = (v.measured - w.expected).abs();
        let ok = v.status == Status::Holds && gap <= SLACK && target <= SLACK;
        pass &= ok;
        details.push(format!(
            "{} {}: T = {:.12} bound = {:.12} |T-bound| = {gap:.1e}",
            if ok { "ok " } else { "BAD" },
            v.case_id,
            v.measured,
            v.bound
        ));
    }
    Outcome::new(1, "sharpness witnesses attain their bounds within 1e-7", pass, details)
}

struct SuiteRun {
    label: String,
    theorem: TheoremId,
    outcomes: Vec<CaseOutcome>,
}

fn suite_runs() -> Vec<SuiteRun> {
    use TheoremId::*;
    let mut plans: Vec<(String, SuiteConfig)> = Vec::new();
    for th in [
        ChebyshevFirst,
        Barnett,
        CeroneDragomirVariation,
        CeroneDragomirLipschitz,
        HwangDragomir,
        ConvexDerivatives,
        LipschitzConvex,
        VariationConvex,
        ConvexSup,
        ChebyshevSign,
        Atkinson,
        Lupas,
        ConvexUpper,
        ConcaveLower,
    ] {
        plans.push((th.name().to_string(), SuiteConfig::new(th, CASES, SEED)));
    }
    for alpha in [1.0, 1.5, 2.0, 4.0, f64::INFINITY] {
        let mut cfg = SuiteConfig::new(HolderConvex, CASES, SEED);
        cfg.alpha = Exponent::from_f64(alpha);
        plans.push((format!("holder-convex(α={alpha})"), cfg));
    }
    plans
        .into_iter()
        .map(|(label, cfg)| SuiteRun {
            label,
            theorem: cfg.theorem,
            outcomes: run_parallel(&cfg),
        })
        .collect()
}

fn no_violations(runs: &[SuiteRun]) -> (Outcome, Vec<String>) {
    let mut failing = Vec::new();
    let mut details = Vec::new();
    let mut soft = Vec::new();
    for run in runs {
        let verdicts: Vec<_> = run.outcomes.iter().map(|o| o.verdict.clone()).collect();
        let s = summarize(&verdicts);
        let worst = run
            .outcomes
            .iter()
            .filter(|o| o.verdict.status == Status::Violated)
            .min_by(|a, b| a.verdict.slack.total_cmp(&b.verdict.slack));
        let mut line = format!(
            "{}: {} holds, {} violated, {} hypotheses not met",
            run.label, s.holds, s.violated, s.hypotheses_not_met
        );
        if let Some(w) = worst {
            line += &format!(
                "; worst slack {:.3e} at {} (f = {}, g = {}, on {})",
                w.verdict.slack, w.verdict.case_id, w.f, w.g, w.interval
            );
        }
        if run.theorem.is_soft() {
            soft.push(line);
            continue;
        }
        if !(s.violated == 0 && s.hypotheses_not_met == 0 && s.holds >= CASES) {
            failing.push(run.theorem);
        }
        details.push(line);
    }
    (
        Outcome {
            id: 2,
            title: "no violations over 1000 seeded hypothesis-satisfying pairs per theorem",
            pass: failing.is_empty(),
            failing,
            details,
        },
        soft,
    )
}

fn h_curve_check() -> Outcome {
    let grid = [1.01, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0, 100.0];
    let h1 = h_constant(1.0).unwrap();
    let h2 = h_constant(2.0).unwrap();
    let curve = h_curve(&grid).unwrap();
    let mut pass = (h1 - 1.0 / 12.0).abs() <= 1e-10 && (h2 - 0.5 / 30f64.sqrt()).abs() <= 1e-10;
    let monotone = curve.windows(2).all(|w| w[0].h <= w[1].h + 1e-12);
    let within = curve
        .iter()
        .all(|p| p.h >= 1.0 / 12.0 - 1e-10 && p.h <= 0.125 + 1e-10);
    let dense = h_curve(&cheby_core::verify::linear_grid(1.0, 100.0, 991)).unwrap();
    let positive = dense.iter().all(|p| p.dh > 0.0);
    pass &= monotone && within && positive;
    Outcome::new(
        3,
        "h(β) curve: endpoints, monotone, within [1/12, 1/8], positive slope",
        pass,
        vec![
            format!("h(1) = {h1:.15}, h(2) = {h2:.15}"),
            format!("monotone on grid: {monotone}, bounded: {within}, dh > 0 on 991 points: {positive}"),
            format!("h(100) = {:.12}", curve.last().unwrap().h),
        ],
    )
}

fn identity_cross_check() -> Outcome {
    let worst = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED);
            rng.set_stream(i);
            let iv = if rng.random_bool(0.5) {
                Interval::unit()
            } else {
                let a = rng.random_range(-2.0..2.0);
                Interval::new(a, a + rng.random_range(0.5..3.0)).unwrap()
            };
            let f = Shape::sample(Family::SmoothGeneral, 3, (0.0, 3.0), &mut rng).to_expr(&iv);
            let g = Shape::sample(Family::SmoothGeneral, 3, (0.0, 3.0), &mut rng).to_expr(&iv);
            let direct = chebyshev_t(&f, &g, &iv, DEFAULT_TOL).unwrap();
            let parts = chebyshev_t_by_parts(&f, &g, &iv, DEFAULT_TOL).unwrap();
            (direct - parts).abs()
        })
        .reduce(|| 0.0, f64::max);
    Outcome::new(
        4,
        "direct and integration-by-parts functionals agree to 1e-8 on 100 smooth pairs",
        worst <= 1e-8,
        vec![format!("max difference {worst:.3e}")],
    )
}

fn chain_ordering(runs: &[SuiteRun]) -> Outcome {
    use TheoremId::*;
    let mut pass = true;
    let mut details = Vec::new();
    for run in runs
        .iter()
        .filter(|r| matches!(r.theorem, Barnett | ConvexDerivatives | LipschitzConvex | VariationConvex))
    {
        let results: Vec<_> = run
            .outcomes
            .iter()
            .filter_map(|o| o.result.as_ref())
            .filter(|r| r.applicable)
            .collect();
        let bad = results.iter().filter(|r| !chain_ordered(r)).count();
        pass &= bad == 0 && !results.is_empty();
        details.push(format!("{}: {} applicable, {bad} out of order", run.label, results.len()));
    }
    Outcome::new(5, "chained bounds are ordered on every applicable case", pass, details)
}

fn lupas_linear() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut applicable = 0;
    for (family, offset) in [(Family::ConvexPositiveDeriv, 0u64), (Family::ConvexPiecewiseLinear, 1)] {
        let mut cfg = SuiteConfig::new(TheoremId::Lupas, 50, SEED + offset);
        cfg.families = Some((family, Family::Linear));
        for o in run_parallel(&cfg) {
            if o.verdict.status != Status::HypothesesNotMet {
                applicable += 1;
            }
            worst = worst.max((o.verdict.measured - o.verdict.bound).abs());
        }
    }
    Outcome::new(
        6,
        "Lupaş lower bound is an equality with a linear factor (100 convex f)",
        applicable == 100 && worst <= SLACK,
        vec![format!("{applicable} applicable, max |T - bound| = {worst:.3e}")],
    )
}

fn tightness() -> (Outcome, Vec<String>) {
    use TheoremId::*;
    let mut plans: Vec<(String, SearchConfig)> = Vec::new();
    for th in TheoremId::ALL {
        if matches!(th, ChebyshevSign | Atkinson | HolderConvex) {
            continue;
        }
        plans.push((th.name().to_string(), SearchConfig::new(th, SEARCH_ITERATIONS, SEED)));
    }
    for alpha in [1.0, 1.5, 2.0, 4.0, f64::INFINITY] {
        let mut cfg = SearchConfig::new(HolderConvex, SEARCH_ITERATIONS, SEED);
        cfg.alpha = Exponent::from_f64(alpha);
        plans.push((format!("holder-convex(α={alpha})"), cfg));
    }
    let reports: Vec<_> = plans
        .par_iter()
        .map(|(label, cfg)| (label.clone(), cfg.theorem, tightness_search(cfg)))
        .collect();
    let mut failing = Vec::new();
    let mut details = Vec::new();
    let mut soft = Vec::new();
    for (label, th, r) in reports {
        let best = r.best_ratio.unwrap_or(0.0);
        let needs_reach = matches!(th, ConvexDerivatives | LipschitzConvex | VariationConvex);
        let ok = best <= 1.0 + 1e-6 && (!needs_reach || best >= 0.99);
        let mut line = format!(
            "{label}: max ratio {best:.9} ({} evaluated, {} skipped)",
            r.evaluated, r.skipped
        );
        if best > 1.0 + 1e-6 {
            line += &format!(
                " at f = {}, g = {}",
                r.best_f.as_deref().unwrap_or("?"),
                r.best_g.as_deref().unwrap_or("?")
            );
            if let Some((c, d)) = r.best_inner {
                line += &format!(", inner = [{c}, {d}]");
            }
        }
        if th.is_soft() {
            soft.push(line);
            continue;
        }
        if !ok {
            failing.push(th);
        }
        details.push(line);
    }
    (
        Outcome {
            id: 7,
            title: "tightness search: ratio never above 1 + 1e-6; at least 0.99 for the witnessed bounds",
            pass: failing.is_empty(),
            failing,
            details,
        },
        soft,
    )
}

fn oracle_self_tests() -> Outcome {
    let unit = Interval::unit();
    let i1 = integrate(&parse("x").unwrap(), &unit, DEFAULT_TOL).unwrap().value;
    let i2 = integrate(&parse("x^2").unwrap(), &unit, DEFAULT_TOL).unwrap().value;
    let b22 = beta(2.0, 2.0).unwrap();
    let b33 = beta(3.0, 3.0).unwrap();
    let tv = total_variation(&parse("sgn(x-0.5)").unwrap(), &unit, DEFAULT_TOL).unwrap();
    let checks = [
        ("∫x", i1, 0.5),
        ("∫x²", i2, 1.0 / 3.0),
        ("B(2,2)", b22, 1.0 / 6.0),
        ("B(3,3)", b33, 1.0 / 30.0),
        ("TV(sgn(t-1/2))", tv, 2.0),
    ];
    let pass = checks.iter().all(|(_, got, want)| (got - want).abs() <= 1e-10);
    Outcome::new(
        8,
        "oracle self-tests to 1e-10",
        pass,
        checks
            .iter()
            .map(|(n, got, want)| format!("{n} = {got:.15} (want {want:.15})"))
            .collect(),
    )
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let runs = suite_runs();
    let (suite_outcome, soft_suites) = no_violations(&runs);
    let (search_outcome, soft_search) = tightness();
    let outcomes = [
        sharpness(),
        suite_outcome,
        h_curve_check(),
        identity_cross_check(),
        chain_ordering(&runs),
        lupas_linear(),
        search_outcome,
        oracle_self_tests(),
    ];
    println!();
    for o in &outcomes {
        o.print();
    }
    println!("INFO concave-lower is reported without failing:");
    for l in soft_suites.iter().chain(&soft_search) {
        println!("       {l}");
    }
    println!("elapsed {:.1?}", start.elapsed());
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!("criteria with FAIL lines: {failed:?}");
    let unexplained: Vec<u32> = outcomes.iter().filter(|o| o.unexplained()).map(|o| o.id).collect();
    assert!(unexplained.is_empty(), "criteria failing beyond refuted claims: {unexplained:?}");
    // A refuted claim that stops failing means the harness lost its teeth.
    for (id, th) in REFUTED {
        let o = outcomes.iter().find(|o| o.id == id).unwrap();
        assert!(o.failing.contains(&th), "criterion {id}: {} no longer reproduces its counterexample", th.name());
    }
}
