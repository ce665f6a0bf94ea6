use alloc::format;
use alloc::vec::Vec;

use crate::bounds::{Direction, TheoremId, Verdict};
use crate::calculus::{chebyshev_t, profile};
use crate::expr::parse;
use crate::Interval;

use super::suite::evaluate_bound;
use crate::calculus::Exponent;

/// Which of a chained pair of bounds a witness attains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Level {
    First,
    Second,
}

/// An extremal pair on `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub theorem: TheoremId,
    pub level: Level,
    pub f: &'static str,
    pub g: &'static str,
    /// The common value of `T` and the bound.
    pub expected: f64,
}

const STEP: &str = "piecewise{[0,0.5]: -1; [0.5,1]: 1}";

pub const WITNESSES: [Witness; 8] = [
    Witness {
        theorem: TheoremId::ConvexDerivatives,
        level: Level::First,
        f: "x^2/6",
        g: "x",
        expected: 1.0 / 72.0,
    },
    Witness {
        theorem: TheoremId::ConvexDerivatives,
        level: Level::Second,
        f: "x",
        g: "x",
        expected: 1.0 / 12.0,
    },
    Witness {
        theorem: TheoremId::LipschitzConvex,
        level: Level::First,
        f: "x",
        g: "x^2/3",
        expected: 1.0 / 36.0,
    },
    Witness {
        theorem: TheoremId::LipschitzConvex,
        level: Level::Second,
        f: "x",
        g: "x",
        expected: 1.0 / 12.0,
    },
    Witness {
        theorem: TheoremId::VariationConvex,
        level: Level::First,
        f: STEP,
        g: "x^2/2",
        expected: 1.0 / 8.0,
    },
    Witness {
        theorem: TheoremId::VariationConvex,
        level: Level::Second,
        f: STEP,
        g: "x",
        expected: 1.0 / 4.0,
    },
    Witness {
        theorem: TheoremId::ConvexSup,
        level: Level::First,
        f: "x",
        g: "x",
        expected: 1.0 / 12.0,
    },
    Witness {
        theorem: TheoremId::ConvexUpper,
        level: Level::First,
        f: "x",
        g: "x",
        expected: 1.0 / 12.0,
    },
];

/// Equality verdict for one witness: `measured` is `T`, `bound` the level
/// the witness attains.
pub fn check_witness(w: &Witness, tol: f64) -> Verdict {
    let iv = Interval::unit();
    let level = match w.level {
        Level::First => "level-1",
        Level::Second => "level-2",
    };
    let id = format!("{}:{}:f={};g={}", w.theorem, level, w.f, w.g);
    let (f, g) = (parse(w.f).expect("witness parses"), parse(w.g).expect("witness parses"));
    let (fp, gp) = (profile(&f, &iv, tol), profile(&g, &iv, tol));
    let t = chebyshev_t(&f, &g, &iv, tol).unwrap_or(f64::NAN);
    match evaluate_bound(w.theorem, &fp, &gp, None, Exponent::Infinity) {
        Ok(Some(r)) => {
            let bound = match w.level {
                Level::First => Some(r.value),
                Level::Second => r.secondary_value,
            };
            match bound {
                Some(b) => Verdict::judge(id, t, b, Direction::Equal, r.applicable),
                None => Verdict::not_applicable(id, t, Direction::Equal),
            }
        }
        _ => Verdict::not_applicable(id, t, Direction::Equal),
    }
}

/// All named witnesses; each should hold with equality.
pub fn sharpness_suite(tol: f64) -> Vec<Verdict> {
    WITNESSES.iter().map(|w| check_witness(w, tol)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Status;
    use crate::DEFAULT_TOL;

    #[test]
    fn every_witness_attains_its_bound() {
        for (w, v) in WITNESSES.iter().zip(sharpness_suite(DEFAULT_TOL)) {
            assert_eq!(v.status, Status::Holds, "{}", v.case_id);
            assert!((v.measured - w.expected).abs() < 1e-10, "{}", v.case_id);
        }
    }
}
