//! Adaptive Gauss–Kronrod (7, 15) quadrature with global bisection.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::expr::{breakpoints, EvalError, Expr};
use crate::Interval;

/// Bisection budget for a single call.
pub const MAX_SUBDIVISIONS: usize = 4000;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadResult {
    pub value: f64,
    /// Heuristic absolute error estimate, not a rigorous enclosure.
    pub err_estimate: f64,
    /// Number of bisections performed.
    pub subdivisions: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QuadError {
    Eval(EvalError),
    InvalidTolerance(f64),
    /// The budget ran out; `best` is the estimate reached so far.
    ToleranceNotReached { best: QuadResult, tol: f64 },
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::Eval(e) => write!(f, "integrand failed: {e}"),
            QuadError::InvalidTolerance(t) => write!(f, "tolerance must be positive, got {t}"),
            QuadError::ToleranceNotReached { best, tol } => write!(
                f,
                "tolerance {tol:e} not reached after {} subdivisions (best {} ± {:e})",
                best.subdivisions, best.value, best.err_estimate
            ),
        }
    }
}

impl core::error::Error for QuadError {}

impl From<EvalError> for QuadError {
    fn from(e: EvalError) -> Self {
        QuadError::Eval(e)
    }
}

/// Failure of the generic engine, parameterized by the integrand's error.
#[derive(Debug)]
pub(crate) enum AdaptiveError<E> {
    Integrand(E),
    InvalidTolerance(f64),
    ToleranceNotReached { best: QuadResult, tol: f64 },
}

impl From<AdaptiveError<EvalError>> for QuadError {
    fn from(e: AdaptiveError<EvalError>) -> Self {
        match e {
            AdaptiveError::Integrand(e) => QuadError::Eval(e),
            AdaptiveError::InvalidTolerance(t) => QuadError::InvalidTolerance(t),
            AdaptiveError::ToleranceNotReached { best, tol } => {
                QuadError::ToleranceNotReached { best, tol }
            }
        }
    }
}

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod15<E>(
    f: &mut impl FnMut(f64) -> Result<f64, E>,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64), E> {
    let centr = 0.5 * (lo + hi);
    let hlgth = 0.5 * (hi - lo);
    let dhlgth = hlgth.abs();

    let fc = f(centr)?;
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..3 {
        let jtw = 2 * j + 1;
        let absc = hlgth * XGK[jtw];
        let f1 = f(centr - absc)?;
        let f2 = f(centr + absc)?;
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += WG[j] * (f1 + f2);
        resk += WGK[jtw] * (f1 + f2);
        resabs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let jtwm1 = 2 * j;
        let absc = hlgth * XGK[jtwm1];
        let f1 = f(centr - absc)?;
        let f2 = f(centr + absc)?;
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += WGK[jtwm1] * (f1 + f2);
        resabs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }

    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    let mut abserr = ((resk - resg) * hlgth).abs();
    if resasc != 0.0 && abserr != 0.0 {
        abserr = resasc * libm::pow(200.0 * abserr / resasc, 1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        abserr = abserr.max(50.0 * f64::EPSILON * resabs);
    }
    Ok((result, abserr))
}

/// Integrates `f` over `iv`, never letting a panel straddle one of `splits`.
pub(crate) fn adaptive<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    iv: &Interval,
    splits: &[f64],
    tol: f64,
) -> Result<QuadResult, AdaptiveError<E>> {
    if !(tol > 0.0) {
        return Err(AdaptiveError::InvalidTolerance(tol));
    }
    let mut edges = Vec::with_capacity(splits.len() + 2);
    edges.push(iv.a());
    edges.extend(splits.iter().copied().filter(|t| iv.contains_interior(*t)));
    edges.push(iv.b());
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let min_width = 1e-14 * iv.length().max(1e-300);
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    for w in edges.windows(2) {
        let (value, err) = kronrod15(&mut f, w[0], w[1]).map_err(AdaptiveError::Integrand)?;
        heap.push(Panel {
            lo: w[0],
            hi: w[1],
            value,
            err,
        });
    }

    let total = |heap: &BinaryHeap<Panel>, frozen: &[Panel]| -> (f64, f64) {
        let mut v = 0.0;
        let mut e = 0.0;
        for p in heap.iter().chain(frozen.iter()) {
            v += p.value;
            e += p.err;
        }
        (v, e)
    };

    let mut subdivisions = 0;
    let mut err_sum: f64 = heap.iter().map(|p| p.err).sum();
    while err_sum > tol && subdivisions < MAX_SUBDIVISIONS {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.lo + worst.hi);
        if worst.hi - worst.lo < min_width || mid <= worst.lo || mid >= worst.hi {
            frozen.push(worst);
            continue;
        }
        let (v1, e1) = kronrod15(&mut f, worst.lo, mid).map_err(AdaptiveError::Integrand)?;
        let (v2, e2) = kronrod15(&mut f, mid, worst.hi).map_err(AdaptiveError::Integrand)?;
        err_sum += e1 + e2 - worst.err;
        heap.push(Panel {
            lo: worst.lo,
            hi: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            lo: mid,
            hi: worst.hi,
            value: v2,
            err: e2,
        });
        subdivisions += 1;
        // Re-sum now and then so the running error total does not drift.
        if subdivisions % 64 == 0 {
            err_sum = total(&heap, &frozen).1;
        }
    }

    let (value, err_estimate) = total(&heap, &frozen);
    let result = QuadResult {
        value,
        err_estimate,
        subdivisions,
    };
    if err_estimate <= tol {
        Ok(result)
    } else {
        Err(AdaptiveError::ToleranceNotReached { best: result, tol })
    }
}

/// Integrates a closure with explicit panel splits.
pub fn integrate_fn(
    f: impl FnMut(f64) -> Result<f64, EvalError>,
    iv: &Interval,
    splits: &[f64],
    tol: f64,
) -> Result<QuadResult, QuadError> {
    adaptive(f, iv, splits, tol).map_err(QuadError::from)
}

/// Integrates `f` over `iv` to absolute tolerance `tol`, splitting panels
/// at every breakpoint of `f`.
pub fn integrate(f: &Expr, iv: &Interval, tol: f64) -> Result<QuadResult, QuadError> {
    let splits = breakpoints(f, iv);
    integrate_fn(|t| f.eval(t), iv, &splits, tol)
}
