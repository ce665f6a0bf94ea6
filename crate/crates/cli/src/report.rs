//! The versioned JSON report. Non-finite numbers are stored as `null` so
//! every report survives a serialize/deserialize round trip.

use cheby_core::bounds::{BoundResult, Direction, Hypothesis, Status, TheoremId, Verdict};
use cheby_core::verify::{Summary, TightnessReport};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "cheby-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub interval: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inner: Option<[f64; 2]>,
    #[serde(default)]
    pub theorems: Vec<TheoremId>,
    /// Exponent of the Hölder-type bound, `"inf"` for infinity.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cases: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub iterations: Option<usize>,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub case_id: String,
    pub measured: Option<f64>,
    pub bound: Option<f64>,
    pub direction: Direction,
    pub slack: Option<f64>,
    pub status: Status,
}

impl From<&Verdict> for VerdictEntry {
    fn from(v: &Verdict) -> Self {
        VerdictEntry {
            case_id: v.case_id.clone(),
            measured: finite(v.measured),
            bound: finite(v.bound),
            direction: v.direction,
            slack: finite(v.slack),
            status: v.status,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub theorem: TheoremId,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<String>,
    pub value: Option<f64>,
    pub secondary_value: Option<f64>,
    pub hypotheses: Vec<Hypothesis>,
    pub applicable: bool,
    /// `T(f, g)` or the difference of means, whichever the bound controls.
    pub measured: Option<f64>,
    pub verdict: VerdictEntry,
    /// `"level-1"`, `"level-2"` or `"level-1+level-2"`: the levels the
    /// measured value meets within the comparison slack.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub equality: Option<String>,
}

pub fn alpha_label(alpha: f64) -> String {
    if alpha.is_infinite() {
        "inf".to_string()
    } else {
        format!("{alpha}")
    }
}

impl BoundEntry {
    pub fn new(r: &BoundResult, measured: f64, verdict: &Verdict) -> Self {
        let near = |b: f64| (measured.abs() - b).abs() <= cheby_core::SLACK;
        let first = r.applicable && near(r.value);
        let second = r.applicable && r.secondary_value.is_some_and(near);
        let equality = match (first, second) {
            (true, true) => Some("level-1+level-2".to_string()),
            (true, false) => Some("level-1".to_string()),
            (false, true) => Some("level-2".to_string()),
            (false, false) => None,
        };
        BoundEntry {
            theorem: r.theorem,
            alpha: r.parameter.map(alpha_label),
            value: finite(r.value),
            secondary_value: r.secondary_value.and_then(finite),
            hypotheses: r.hypotheses.clone(),
            applicable: r.applicable,
            measured: finite(measured),
            verdict: verdict.into(),
            equality,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryError {
    pub theorem: TheoremId,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessEntry {
    pub theorem: TheoremId,
    pub iterations: usize,
    pub evaluated: usize,
    pub skipped: usize,
    /// `null` when no candidate had a defined ratio; `"inf"` is never
    /// produced because an unbounded ratio is reported by `unbounded`.
    pub best_ratio: Option<f64>,
    pub unbounded: bool,
    pub best_f: Option<String>,
    pub best_g: Option<String>,
    pub best_inner: Option<[f64; 2]>,
}

impl From<&TightnessReport> for TightnessEntry {
    fn from(r: &TightnessReport) -> Self {
        TightnessEntry {
            theorem: r.theorem,
            iterations: r.iterations,
            evaluated: r.evaluated,
            skipped: r.skipped,
            best_ratio: r.best_ratio.and_then(finite),
            unbounded: r.best_ratio.is_some_and(f64::is_infinite),
            best_f: r.best_f.clone(),
            best_g: r.best_g.clone(),
            best_inner: r.best_inner.map(|(c, d)| [c, d]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub inputs: Inputs,
    /// The functional on the input pair.
    #[serde(rename = "T", skip_serializing_if = "Option::is_none", default)]
    pub t: Option<f64>,
    #[serde(default)]
    pub bounds: Vec<BoundEntry>,
    #[serde(default)]
    pub verdicts: Vec<VerdictEntry>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tightness: Option<TightnessEntry>,
    #[serde(default)]
    pub errors: Vec<EntryError>,
}

impl Report {
    pub fn new(command: &str, inputs: Inputs) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            seed: None,
            inputs,
            t: None,
            bounds: Vec::new(),
            verdicts: Vec::new(),
            summary: Summary::default(),
            tightness: None,
            errors: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_finite_fields_round_trip() {
        let v = Verdict::not_applicable("c".into(), 0.5, Direction::Lower);
        let mut r = Report::new("verify", Inputs { tol: 1e-10, ..Inputs::default() });
        r.verdicts.push((&v).into());
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.verdicts[0].bound, None);
    }
}
