use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use cheby_core::bounds::{Status, TheoremId};
use cheby_core::calculus::{chebyshev_t, profile, Exponent};
use cheby_core::expr::parse;
use cheby_core::verify::{
    evaluate_bound, h_curve, linear_grid, measure, run_case, sharpness_suite, summarize,
    tightness_search, SearchConfig, SuiteConfig,
};
use cheby_core::{Interval, DEFAULT_TOL, SLACK};
use rayon::prelude::*;

use crate::rational::annotate;
use crate::report::{alpha_label, BoundEntry, EntryError, Inputs, Report, TightnessEntry, VerdictEntry};

/// Exit status for success or bounds that hold.
pub const EXIT_OK: i32 = 0;
/// Exit status when a violation was found.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit status for usage, parse and domain errors.
pub const EXIT_USAGE: i32 = 2;

/// Ratio above which a tightness search counts as falsifying a bound.
pub const FALSIFY_LIMIT: f64 = 1.0 + 1e-6;

pub struct Output {
    pub report: Option<Report>,
    pub text: String,
    pub exit: i32,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Quadrature tolerance, overridable through `CHEBY_TOL`.
pub fn tolerance_from_env() -> Result<f64, UsageError> {
    match std::env::var("CHEBY_TOL") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(usage(format!("CHEBY_TOL must be a positive number, got {s:?}"))),
        },
        Err(_) => Ok(DEFAULT_TOL),
    }
}

pub fn parse_theorems(list: &str) -> Result<Vec<TheoremId>, UsageError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| TheoremId::from_name(s).ok_or_else(|| usage(format!("unknown theorem {s:?}"))))
        .collect()
}

pub fn parse_alpha(s: &str) -> Result<Exponent, UsageError> {
    let s = s.trim();
    if matches!(s, "inf" | "infinity" | "∞") {
        return Ok(Exponent::Infinity);
    }
    match s.parse::<f64>() {
        Ok(a) if a >= 1.0 => Ok(Exponent::from_f64(a)),
        _ => Err(usage(format!("alpha must be a number >= 1 or 'inf', got {s:?}"))),
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Violated => "VIOLATED",
        Status::HypothesesNotMet => "hypotheses not met",
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), annotate)
}

pub struct BoundArgs {
    pub f: String,
    pub g: String,
    pub a: f64,
    pub b: f64,
    pub theorems: Option<Vec<TheoremId>>,
    pub alpha: Exponent,
    /// Inner interval of the mean-difference bounds; the middle half of
    /// `[a, b]` when absent.
    pub inner: Option<(f64, f64)>,
    pub tol: f64,
}

/// Every bound of the catalog on one pair.
pub fn cmd_bound(args: &BoundArgs) -> Result<Output, UsageError> {
    let f = parse(&args.f).map_err(|e| usage(format!("--f: {e}")))?;
    let g = parse(&args.g).map_err(|e| usage(format!("--g: {e}")))?;
    let iv = Interval::new(args.a, args.b).map_err(|e| usage(e.to_string()))?;
    let (c, d) = args.inner.unwrap_or((iv.lerp(0.25), iv.lerp(0.75)));
    let inner = Interval::new(c, d).map_err(|e| usage(format!("--inner: {e}")))?;
    if !iv.contains_interval(&inner) || inner.length() >= iv.length() {
        return Err(usage("--inner must lie inside [a, b] and be shorter"));
    }
    let t = chebyshev_t(&f, &g, &iv, args.tol).map_err(|e| usage(format!("T(f, g): {e}")))?;
    let theorems = args
        .theorems
        .clone()
        .unwrap_or_else(|| TheoremId::ALL.to_vec());

    let inputs = Inputs {
        f: Some(args.f.clone()),
        g: Some(args.g.clone()),
        interval: Some([iv.a(), iv.b()]),
        inner: Some([inner.a(), inner.b()]),
        theorems: theorems.clone(),
        alpha: Some(alpha_label(args.alpha.as_f64())),
        tol: args.tol,
        ..Inputs::default()
    };
    let mut report = Report::new("bound", inputs);
    report.t = Some(t);

    let fp = profile(&f, &iv, args.tol);
    let gp = profile(&g, &iv, args.tol);
    for &th in &theorems {
        let measured = match measure(th, &f, &g, &iv, Some(&inner), args.tol) {
            Some(m) => m,
            None => {
                report.errors.push(EntryError {
                    theorem: th,
                    message: "measured quantity could not be computed".into(),
                });
                continue;
            }
        };
        match th {
            TheoremId::ChebyshevSign => {
                let mut v = cheby_core::bounds::chebyshev_sign(&fp, &gp, measured);
                v.case_id = th.name().into();
                report.verdicts.push((&v).into());
                continue;
            }
            TheoremId::Atkinson => {
                let v = cheby_core::bounds::atkinson(&fp, &gp, measured);
                report.verdicts.push((&v).into());
                continue;
            }
            _ => {}
        }
        match evaluate_bound(th, &fp, &gp, Some(&inner), args.alpha) {
            Ok(Some(r)) => {
                let v = cheby_core::bounds::Verdict::judge(
                    th.name().into(),
                    measured,
                    r.value,
                    th.direction(),
                    r.applicable,
                );
                report.bounds.push(BoundEntry::new(&r, measured, &v));
            }
            Ok(None) => {}
            Err(e) => report.errors.push(EntryError {
                theorem: th,
                message: e.to_string(),
            }),
        }
    }
    let verdicts: Vec<_> = report
        .bounds
        .iter()
        .map(|b| b.verdict.clone())
        .chain(report.verdicts.iter().cloned())
        .collect();
    report.summary = summarize_entries(&verdicts);

    let mut text = String::new();
    let _ = writeln!(text, "f = {}, g = {}, [a, b] = {iv}", args.f, args.g);
    let _ = writeln!(text, "T(f, g) = {}", annotate(t));
    let _ = writeln!(text, "mean-difference bounds use the inner interval {inner}");
    let _ = writeln!(text);
    let _ = writeln!(
        text,
        "{:<27} {:<28} {:<28} {:<28} {:<10} {:<20} hypotheses",
        "theorem", "bound", "secondary", "measured", "slack", "status"
    );
    for b in &report.bounds {
        let mut status = status_word(b.verdict.status).to_string();
        if let Some(level) = &b.equality {
            status += &format!(" (equality {level})");
        }
        let hyps: Vec<String> = b
            .hypotheses
            .iter()
            .map(|h| format!("{} {}", h.name, if h.passed { "yes" } else { "NO" }))
            .collect();
        let name = match &b.alpha {
            Some(a) => format!("{} α={a}", b.theorem),
            None => b.theorem.to_string(),
        };
        let _ = writeln!(
            text,
            "{:<27} {:<28} {:<28} {:<28} {:<10} {:<20} {}",
            name,
            opt(b.value),
            opt(b.secondary_value),
            opt(b.measured),
            b.verdict.slack.map_or("-".into(), |s| format!("{s:.2e}")),
            status,
            hyps.join(", ")
        );
    }
    for v in &report.verdicts {
        let _ = writeln!(
            text,
            "{:<27} {:<28} {:<28} {:<28} {:<10} {}",
            v.case_id,
            opt(v.bound),
            "-",
            opt(v.measured),
            v.slack.map_or("-".into(), |s| format!("{s:.2e}")),
            status_word(v.status)
        );
    }
    for e in &report.errors {
        let _ = writeln!(text, "{:<27} {}", e.theorem, e.message);
    }
    Ok(Output {
        report: Some(report),
        text,
        exit: EXIT_OK,
    })
}

fn summarize_entries(vs: &[VerdictEntry]) -> cheby_core::verify::Summary {
    let mut s = cheby_core::verify::Summary::default();
    for v in vs {
        match v.status {
            Status::Holds => s.holds += 1,
            Status::Violated => s.violated += 1,
            Status::HypothesesNotMet => s.hypotheses_not_met += 1,
        }
    }
    s
}

pub struct VerifyArgs {
    pub theorem: TheoremId,
    pub cases: usize,
    pub seed: u64,
    pub alpha: Exponent,
    pub tol: f64,
}

/// A seeded random suite; exit 1 iff a hard violation occurs.
pub fn cmd_verify(args: &VerifyArgs) -> Result<Output, UsageError> {
    if args.cases == 0 {
        return Err(usage("--cases must be at least 1"));
    }
    let mut cfg = SuiteConfig::new(args.theorem, args.cases, args.seed);
    cfg.alpha = args.alpha;
    cfg.tol = args.tol;
    let outcomes: Vec<_> = (0..cfg.cases)
        .into_par_iter()
        .map(|i| run_case(&cfg, i))
        .collect();
    let verdicts: Vec<_> = outcomes.iter().map(|o| o.verdict.clone()).collect();
    let summary = summarize(&verdicts);

    let inputs = Inputs {
        theorems: vec![args.theorem],
        alpha: (args.theorem == TheoremId::HolderConvex).then(|| alpha_label(args.alpha.as_f64())),
        cases: Some(args.cases),
        tol: args.tol,
        ..Inputs::default()
    };
    let mut report = Report::new("verify", inputs);
    report.seed = Some(args.seed);
    report.verdicts = verdicts.iter().map(Into::into).collect();
    report.summary = summary;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "{}: {} cases, seed {}: {} holds, {} violated, {} hypotheses not met",
        args.theorem, args.cases, args.seed, summary.holds, summary.violated, summary.hypotheses_not_met
    );
    for o in outcomes.iter().filter(|o| o.verdict.status == Status::Violated) {
        let _ = writeln!(
            text,
            "  violated {}: measured {} bound {} slack {:.3e}; f = {}, g = {}, on {}",
            o.verdict.case_id, o.verdict.measured, o.verdict.bound, o.verdict.slack, o.f, o.g, o.interval
        );
    }
    if args.theorem.is_soft() && summary.violated > 0 {
        let _ = writeln!(text, "  (violations of {} are reported, not failed)", args.theorem);
    }
    let hard = summary.violated > 0 && !args.theorem.is_soft();
    Ok(Output {
        report: Some(report),
        text,
        exit: if hard { EXIT_VIOLATION } else { EXIT_OK },
    })
}

/// The named equality witnesses; exit 1 iff one misses by more than the slack.
pub fn cmd_sharpness(tol: f64) -> Output {
    let verdicts = sharpness_suite(tol);
    let mut report = Report::new(
        "sharpness",
        Inputs {
            theorems: cheby_core::verify::WITNESSES.iter().map(|w| w.theorem).collect(),
            tol,
            ..Inputs::default()
        },
    );
    report.summary = summarize(&verdicts);
    report.verdicts = verdicts.iter().map(Into::into).collect();
    let mut text = String::new();
    for v in &verdicts {
        let _ = writeln!(
            text,
            "{:<8} {}: T = {}, bound = {}, |T - bound| = {:.2e}",
            status_word(v.status),
            v.case_id,
            annotate(v.measured),
            annotate(v.bound),
            (v.measured - v.bound).abs()
        );
    }
    let missed = verdicts.iter().any(|v| v.status != Status::Holds);
    let _ = writeln!(
        text,
        "{} of {} witnesses attain their bound within {SLACK:e}",
        report.summary.holds,
        verdicts.len()
    );
    Output {
        report: Some(report),
        text,
        exit: if missed { EXIT_VIOLATION } else { EXIT_OK },
    }
}

pub struct HCurveArgs {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

/// CSV `beta,h,dh` of the Beta-function constant.
pub fn hcurve_csv(args: &HCurveArgs) -> Result<String, UsageError> {
    if args.steps == 0 {
        return Err(usage("--steps must be at least 1"));
    }
    let grid = linear_grid(args.from, args.to, args.steps);
    let points = h_curve(&grid).map_err(|e| usage(e.to_string()))?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(["beta", "h", "dh"]).map_err(|e| usage(e.to_string()))?;
    for p in points {
        w.write_record([p.beta.to_string(), p.h.to_string(), p.dh.to_string()])
            .map_err(|e| usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii csv"))
}

pub fn cmd_hcurve(args: &HCurveArgs, out: Option<&Path>) -> Result<Output, UsageError> {
    let csv = hcurve_csv(args)?;
    let text = match out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            file.write_all(csv.as_bytes())
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            format!("wrote {} rows to {}\n", args.steps, path.display())
        }
        None => csv,
    };
    Ok(Output {
        report: None,
        text,
        exit: EXIT_OK,
    })
}

pub struct FalsifyArgs {
    pub theorem: TheoremId,
    pub iterations: usize,
    pub seed: u64,
    pub alpha: Exponent,
    pub tol: f64,
}

/// Tightness search; exit 1 iff the best ratio exceeds `1 + 1e-6`.
pub fn cmd_falsify(args: &FalsifyArgs) -> Result<Output, UsageError> {
    if args.iterations == 0 {
        return Err(usage("--iterations must be at least 1"));
    }
    let mut cfg = SearchConfig::new(args.theorem, args.iterations, args.seed);
    cfg.alpha = args.alpha;
    cfg.tol = args.tol;
    let r = tightness_search(&cfg);
    let inputs = Inputs {
        theorems: vec![args.theorem],
        alpha: (args.theorem == TheoremId::HolderConvex).then(|| alpha_label(args.alpha.as_f64())),
        iterations: Some(args.iterations),
        tol: args.tol,
        ..Inputs::default()
    };
    let mut report = Report::new("falsify", inputs);
    report.seed = Some(args.seed);
    report.tightness = Some(TightnessEntry::from(&r));

    let mut text = String::new();
    match r.best_ratio {
        None => {
            let _ = writeln!(
                text,
                "{}: no candidate with a defined ratio ({} skipped)",
                args.theorem, r.skipped
            );
        }
        Some(best) => {
            let _ = writeln!(
                text,
                "{}: max ratio {best} over {} candidates ({} skipped)",
                args.theorem, r.evaluated, r.skipped
            );
            let _ = writeln!(
                text,
                "  f = {}\n  g = {}",
                r.best_f.as_deref().unwrap_or("-"),
                r.best_g.as_deref().unwrap_or("-")
            );
            if let Some((c, d)) = r.best_inner {
                let _ = writeln!(text, "  inner = [{c}, {d}]");
            }
        }
    }
    let exceeded = r.exceeds(FALSIFY_LIMIT);
    if exceeded {
        let _ = writeln!(text, "  ratio exceeds {FALSIFY_LIMIT}: bound numerically falsified");
    }
    Ok(Output {
        report: Some(report),
        text,
        exit: if exceeded { EXIT_VIOLATION } else { EXIT_OK },
    })
}
