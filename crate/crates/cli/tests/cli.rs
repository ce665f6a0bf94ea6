//! End-to-end runs of the `cheby` binary.

use std::process::{Command, Output};

use cheby::report::{Report, SCHEMA};
use cheby_core::bounds::{Status, TheoremId};

fn cheby(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cheby"))
        .args(args)
        .env_remove("CHEBY_TOL")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = cheby(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let report = Report::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, out.status.code().unwrap())
}

fn bound_entry(r: &Report, th: TheoremId) -> &cheby::report::BoundEntry {
    r.bounds.iter().find(|b| b.theorem == th).expect("theorem reported")
}

fn near(x: Option<f64>, want: f64) -> bool {
    x.is_some_and(|x| (x - want).abs() <= 1e-7)
}

#[test]
fn identity_pair_meets_both_levels() {
    let (r, code) = json(&["bound", "--f", "x", "--g", "x", "--a", "0", "--b", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r.schema, SCHEMA);
    assert!(near(r.t, 1.0 / 12.0));
    let b = bound_entry(&r, TheoremId::ConvexDerivatives);
    assert!(near(b.secondary_value, 1.0 / 12.0));
    assert!(b.equality.as_deref().is_some_and(|e| e.contains("level-2")));
}

#[test]
fn quadratic_witness_meets_first_level() {
    let (r, code) = json(&[
        "bound", "--f", "x^2/6", "--g", "x", "--a", "0", "--b", "1",
        "--theorems", "convex-derivatives",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.bounds.len(), 1);
    let b = &r.bounds[0];
    assert!(near(b.value, 1.0 / 72.0) && near(r.t, 1.0 / 72.0));
    assert_eq!(b.equality.as_deref(), Some("level-1"));
}

#[test]
fn step_witness_meets_variation_bound() {
    let (r, _) = json(&[
        "bound", "--f", "piecewise{[0,0.5]:-1;[0.5,1]:1}", "--g", "x^2/2", "--a", "0", "--b", "1",
        "--theorems", "variation-convex",
    ]);
    let b = &r.bounds[0];
    assert!(near(b.value, 0.125) && near(r.t, 0.125));
    assert_eq!(b.equality.as_deref(), Some("level-1"));
}

#[test]
fn unmet_hypotheses_are_inline_and_exit_zero() {
    let (r, code) = json(&[
        "bound", "--f", "sgn(x-0.5)", "--g", "x", "--a", "0", "--b", "1",
        "--theorems", "lipschitz-convex,convex-upper",
    ]);
    assert_eq!(code, 0);
    // A jump leaves no Lipschitz constant: reported, not fatal.
    let lip_missing = r.errors.iter().any(|e| e.theorem == TheoremId::LipschitzConvex)
        || r.bounds.iter().any(|b| b.theorem == TheoremId::LipschitzConvex && !b.applicable);
    assert!(lip_missing);
    let upper = bound_entry(&r, TheoremId::ConvexUpper);
    assert!(!upper.applicable);
    assert_eq!(upper.verdict.status, Status::HypothesesNotMet);
}

#[test]
fn json_round_trips_and_matches_text() {
    let args = ["bound", "--f", "exp(x)", "--g", "sin(x)", "--a", "-1", "--b", "2"];
    let (r, _) = json(&args);
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    let text = String::from_utf8(cheby(&args).stdout).unwrap();
    assert!(text.contains(&format!("{}", r.t.unwrap())), "{text}");
    for b in r.bounds.iter().filter_map(|b| b.value) {
        assert!(text.contains(&format!("{b}")), "{b} missing from\n{text}");
    }
}

#[test]
fn verify_exit_tracks_hard_violations() {
    let (r, code) = json(&["verify", "--theorem", "barnett", "--cases", "30", "--seed", "3"]);
    assert_eq!((code, r.summary.violated), (0, 0));
    assert_eq!(r.verdicts.len(), 30);
    let (again, _) = json(&["verify", "--theorem", "barnett", "--cases", "30", "--seed", "3"]);
    assert_eq!(again, r);

    // f = g = x² style pairs refute the convex upper bound.
    let (r, code) = json(&["verify", "--theorem", "convex-upper", "--cases", "30", "--seed", "3"]);
    assert!(r.summary.violated > 0);
    assert_eq!(code, 1);

    // Violations of the concave lower bound are reported but not fatal.
    let (r, code) = json(&["verify", "--theorem", "concave-lower", "--cases", "60", "--seed", "3"]);
    assert!(r.summary.violated > 0);
    assert_eq!(code, 0);
}

#[test]
fn sharpness_passes() {
    let (r, code) = json(&["sharpness"]);
    assert_eq!(code, 0);
    assert_eq!(r.summary.holds, 8);
}

#[test]
fn hcurve_writes_csv_with_lf() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.csv");
    let out = cheby(&["hcurve", "--from", "1", "--to", "2", "--steps", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(!csv.contains('\r'));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "beta,h,dh");
    assert_eq!(lines.len(), 6);
    let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    assert!((first[1] - 1.0 / 12.0).abs() < 1e-12 && first[2] > 0.0);
    let last: Vec<f64> = lines[5].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 2.0);
    assert!((last[1] - 0.5 / 30f64.sqrt()).abs() < 1e-12);
}

#[test]
fn falsify_flags_refuted_claim() {
    let (r, code) = json(&["falsify", "--theorem", "convex-derivatives", "--iterations", "300"]);
    assert_eq!(code, 0);
    assert!(r.tightness.unwrap().best_ratio.unwrap() <= 1.0 + 1e-6);
    let (r, code) = json(&["falsify", "--theorem", "convex-upper", "--iterations", "300"]);
    assert_eq!(code, 1);
    let t = r.tightness.unwrap();
    assert!(t.unbounded || t.best_ratio.unwrap() > 1.0 + 1e-6);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bound", "--f", "x+", "--g", "x", "--a", "0", "--b", "1"][..],
        &["bound", "--f", "x", "--g", "x", "--a", "1", "--b", "0"],
        &["bound", "--f", "x", "--g", "x", "--a", "0", "--b", "1", "--theorems", "nope"],
        &["bound", "--f", "x", "--g", "x", "--a", "0", "--b", "1", "--alpha", "0.5"],
        &["verify", "--theorem", "nope"],
        &["frobnicate"],
    ] {
        let out = cheby(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn tolerance_comes_from_environment() {
    let run = |tol: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_cheby"));
        cmd.args(["bound", "--f", "x", "--g", "x", "--a", "0", "--b", "1", "--json"]);
        match tol {
            Some(t) => cmd.env("CHEBY_TOL", t),
            None => cmd.env_remove("CHEBY_TOL"),
        };
        cmd.output().unwrap()
    };
    let r = Report::from_json(&String::from_utf8(run(Some("1e-8")).stdout).unwrap()).unwrap();
    assert_eq!(r.inputs.tol, 1e-8);
    let r = Report::from_json(&String::from_utf8(run(None).stdout).unwrap()).unwrap();
    assert_eq!(r.inputs.tol, 1e-10);
    assert_eq!(run(Some("-1")).status.code(), Some(2));
}
