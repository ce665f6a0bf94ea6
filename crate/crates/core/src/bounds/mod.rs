//! The bound catalog.
//!
//! Each function takes [`FuncProfile`]s, checks the hypotheses of one
//! inequality numerically, and returns a [`BoundResult`]. A result with
//! `applicable == false` still carries the number the formula gives, so
//! callers can show what the bound would be. Missing data (say `‖f'‖∞`
//! for a function that jumps) is an error instead.
//!
//! Bounds on the absolute value of the functional (or of a difference of
//! means) compare against `|T|`; the bounds for convex and concave pairs
//! are one-sided and compare against `T` itself. [`Direction`] records
//! which.
//!
//! [`FuncProfile`]: crate::calculus::FuncProfile

mod classical;
mod convex_deriv;
mod convex_pair;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::calculus::CalculusError;
use crate::SLACK;

pub use classical::{
    barnett, cerone_dragomir, chebyshev_first, chebyshev_sign, hwang_dragomir, hwang_kernels,
    hwang_rhs, KernelIJ,
};
pub use convex_deriv::{
    convex_derivatives, convex_sup, h_constant, holder_convex, lipschitz_convex,
    lipschitz_convex_with, mn_pair, variation_convex, variation_convex_with, MNPair,
};
pub use convex_pair::{atkinson, concave_lower, convex_upper, lupas, ATKINSON_MOMENT_EPS};

/// Identifies one inequality of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum TheoremId {
    /// `|T| <= (b-a)²/12 ‖f'‖∞ ‖g'‖∞`.
    ChebyshevFirst,
    /// `T >= 0` for monotone functions of the same sense, `<= 0` otherwise.
    ChebyshevSign,
    /// Difference of means against `‖f'‖∞`.
    Barnett,
    /// Difference of means against the total variation.
    CeroneDragomirVariation,
    /// Difference of means against a Lipschitz constant.
    CeroneDragomirLipschitz,
    /// Difference of means when `|f'|` is convex.
    HwangDragomir,
    /// `|f'|` and `|g'|` convex; endpoint derivatives only.
    ConvexDerivatives,
    /// `f` Lipschitz, `|g'|` convex.
    LipschitzConvex,
    /// `f` of bounded variation, `|g'|` convex.
    VariationConvex,
    /// `f' ∈ L_α`, `|g'|` convex, Beta-function constant.
    HolderConvex,
    /// `|f'|` convex, `g'` bounded.
    ConvexSup,
    /// `T <= (f(b)-f(a))(g(b)-g(a))/12` for convex `f`, `g`.
    ConvexUpper,
    /// `T >= (f(b)-f(a))(g(b)-g(a))/12` for concave `f`, `g`.
    ConcaveLower,
    /// First-moment lower bound for convex `f`, `g`.
    Lupas,
    /// `T >= 0` for convex `f`, `g` when `g` has zero first moment.
    Atkinson,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::ChebyshevFirst,
        TheoremId::ChebyshevSign,
        TheoremId::Barnett,
        TheoremId::CeroneDragomirVariation,
        TheoremId::CeroneDragomirLipschitz,
        TheoremId::HwangDragomir,
        TheoremId::ConvexDerivatives,
        TheoremId::LipschitzConvex,
        TheoremId::VariationConvex,
        TheoremId::HolderConvex,
        TheoremId::ConvexSup,
        TheoremId::ConvexUpper,
        TheoremId::ConcaveLower,
        TheoremId::Lupas,
        TheoremId::Atkinson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::ChebyshevFirst => "chebyshev-first",
            TheoremId::ChebyshevSign => "chebyshev-sign",
            TheoremId::Barnett => "barnett",
            TheoremId::CeroneDragomirVariation => "cerone-dragomir-variation",
            TheoremId::CeroneDragomirLipschitz => "cerone-dragomir-lipschitz",
            TheoremId::HwangDragomir => "hwang-dragomir",
            TheoremId::ConvexDerivatives => "convex-derivatives",
            TheoremId::LipschitzConvex => "lipschitz-convex",
            TheoremId::VariationConvex => "variation-convex",
            TheoremId::HolderConvex => "holder-convex",
            TheoremId::ConvexSup => "convex-sup",
            TheoremId::ConvexUpper => "convex-upper",
            TheoremId::ConcaveLower => "concave-lower",
            TheoremId::Lupas => "lupas",
            TheoremId::Atkinson => "atkinson",
        }
    }

    pub fn from_name(name: &str) -> Option<TheoremId> {
        TheoremId::ALL.into_iter().find(|t| t.name() == name)
    }

    /// How the measured quantity is compared with the bound.
    pub fn direction(self) -> Direction {
        match self {
            TheoremId::ConvexUpper => Direction::Upper,
            TheoremId::ConcaveLower | TheoremId::Lupas | TheoremId::Atkinson => Direction::Lower,
            // Depends on the senses; resolved per case.
            TheoremId::ChebyshevSign => Direction::Lower,
            _ => Direction::Abs,
        }
    }

    /// True for the bounds on a difference of integral means rather than
    /// on the functional.
    pub fn is_mean_difference(self) -> bool {
        matches!(
            self,
            TheoremId::Barnett
                | TheoremId::CeroneDragomirVariation
                | TheoremId::CeroneDragomirLipschitz
                | TheoremId::HwangDragomir
        )
    }

    /// Violations of this inequality are reported but not treated as
    /// failures.
    pub fn is_soft(self) -> bool {
        matches!(self, TheoremId::ConcaveLower)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Direction {
    /// `|measured| <= bound`.
    Abs,
    /// `measured <= bound`.
    Upper,
    /// `measured >= bound`.
    Lower,
    /// `measured == bound` within the slack.
    Equal,
}

impl Direction {
    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Abs => "|T|<=bound",
            Direction::Upper => "T<=bound",
            Direction::Lower => "T>=bound",
            Direction::Equal => "T==bound",
        }
    }

    /// Signed margin: nonnegative when the comparison succeeds exactly.
    pub fn slack(self, measured: f64, bound: f64) -> f64 {
        match self {
            Direction::Abs => bound - measured.abs(),
            Direction::Upper => bound - measured,
            Direction::Lower => measured - bound,
            Direction::Equal => -(measured - bound).abs(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Hypothesis {
    pub name: String,
    pub passed: bool,
}

impl Hypothesis {
    pub(crate) fn new(name: &str, passed: bool) -> Self {
        Hypothesis {
            name: String::from(name),
            passed,
        }
    }
}

/// One bound from the catalog.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundResult {
    pub theorem: TheoremId,
    /// Exponent `α` for [`TheoremId::HolderConvex`].
    pub parameter: Option<f64>,
    /// The bound; the sharper one when two are chained.
    pub value: f64,
    /// The coarser second bound of a chained pair.
    pub secondary_value: Option<f64>,
    pub hypotheses: Vec<Hypothesis>,
    /// All hypotheses passed.
    pub applicable: bool,
}

impl BoundResult {
    pub(crate) fn new(theorem: TheoremId, value: f64, hypotheses: Vec<Hypothesis>) -> Self {
        let applicable = hypotheses.iter().all(|h| h.passed);
        BoundResult {
            theorem,
            parameter: None,
            value,
            secondary_value: None,
            hypotheses,
            applicable,
        }
    }

    pub(crate) fn with_secondary(mut self, v: f64) -> Self {
        self.secondary_value = Some(v);
        self
    }

    pub(crate) fn with_parameter(mut self, p: f64) -> Self {
        self.parameter = Some(p);
        self
    }

    pub fn direction(&self) -> Direction {
        self.theorem.direction()
    }

    /// Names of the hypotheses that failed.
    pub fn failed_hypotheses(&self) -> impl Iterator<Item = &str> {
        self.hypotheses
            .iter()
            .filter(|h| !h.passed)
            .map(|h| h.name.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundError {
    /// A quantity the bound needs could not be computed.
    Unavailable {
        theorem: TheoremId,
        quantity: &'static str,
    },
    /// Geometric preconditions such as `a <= x < y <= b` failed.
    Argument(&'static str),
    Calculus(CalculusError),
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundError::Unavailable { theorem, quantity } => {
                write!(f, "{theorem}: hypotheses not met ({quantity} unavailable)")
            }
            BoundError::Argument(msg) => f.write_str(msg),
            BoundError::Calculus(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for BoundError {}

impl From<CalculusError> for BoundError {
    fn from(e: CalculusError) -> Self {
        BoundError::Calculus(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Status {
    Holds,
    Violated,
    HypothesesNotMet,
}

/// Outcome of checking one bound against the oracle on one case.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verdict {
    pub case_id: String,
    /// `T(f, g)`, or the difference of means for those bounds.
    pub measured: f64,
    pub bound: f64,
    pub direction: Direction,
    /// [`Direction::slack`] of `measured` against `bound`.
    pub slack: f64,
    pub status: Status,
}

impl Verdict {
    /// `status` is `Holds` exactly when the directed comparison succeeds
    /// within [`SLACK`].
    pub fn judge(
        case_id: String,
        measured: f64,
        bound: f64,
        direction: Direction,
        applicable: bool,
    ) -> Verdict {
        let slack = direction.slack(measured, bound);
        let status = if !applicable {
            Status::HypothesesNotMet
        } else if slack >= -SLACK {
            Status::Holds
        } else {
            Status::Violated
        };
        Verdict {
            case_id,
            measured,
            bound,
            direction,
            slack,
            status,
        }
    }

    pub fn not_applicable(case_id: String, measured: f64, direction: Direction) -> Verdict {
        Verdict {
            case_id,
            measured,
            bound: f64::NAN,
            direction,
            slack: f64::NAN,
            status: Status::HypothesesNotMet,
        }
    }
}
