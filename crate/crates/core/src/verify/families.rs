use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::calculus::FuncProfile;
use crate::expr::{Expr, Piece, PiecewiseError};
use crate::Interval;

/// Random function classes, each of which satisfies its hypothesis by
/// construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Family {
    /// `f' = c₀ + Σ cᵢ (x - tᵢ)₊^{pᵢ}` with `cᵢ >= 0` and `pᵢ ∈ {1, 2}`, so `f'` is
    /// convex and nonnegative. Mirroring in the midpoint and negation
    /// keep `|f'|` convex.
    ConvexPositiveDeriv,
    /// `k + s·x + Σ cᵢ |x - tᵢ|` with `cᵢ >= 0`.
    ConvexPiecewiseLinear,
    /// Polynomial plus one sine, all coefficients signed.
    SmoothGeneral,
    /// Piecewise constant with a fixed number of jumps.
    StepFunction,
    /// Negated convex-positive-derivative functions.
    Concave,
    /// `k + s·x`.
    Linear,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::ConvexPositiveDeriv,
        Family::ConvexPiecewiseLinear,
        Family::SmoothGeneral,
        Family::StepFunction,
        Family::Concave,
        Family::Linear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ConvexPositiveDeriv => "convex-positive-deriv",
            Family::ConvexPiecewiseLinear => "convex-piecewise-linear",
            Family::SmoothGeneral => "smooth-general",
            Family::StepFunction => "step-function",
            Family::Concave => "concave",
            Family::Linear => "linear",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FamilySpec {
    pub family: Family,
    /// Number of atoms, jumps, or the polynomial degree.
    pub size: usize,
    /// Range of coefficient magnitudes.
    pub coeff_range: (f64, f64),
    pub seed: u64,
    pub interval: Interval,
}

impl FamilySpec {
    pub fn new(family: Family, seed: u64) -> Self {
        FamilySpec {
            family,
            size: 3,
            coeff_range: (0.0, 3.0),
            seed,
            interval: Interval::unit(),
        }
    }
}

/// The parameters of one member of a [`Family`].
///
/// Knot positions are stored relative to the interval, in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Shape {
    pub family: Family,
    pub coeffs: Vec<f64>,
    pub knots: Vec<f64>,
    /// Reflect in the midpoint of the interval.
    pub mirror: bool,
    pub negate: bool,
}

/// How a coefficient may move under perturbation.
#[derive(Clone, Copy)]
enum Slot {
    NonNegative,
    Signed,
}

fn magnitude(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..=hi)
    } else {
        lo
    }
}

fn signed(rng: &mut impl Rng, range: (f64, f64)) -> f64 {
    let m = magnitude(rng, range);
    if rng.random_bool(0.5) {
        m
    } else {
        -m
    }
}

impl Shape {
    /// A random member of `family` with `size` atoms.
    pub fn sample(family: Family, size: usize, range: (f64, f64), rng: &mut impl Rng) -> Shape {
        let size = size.max(1);
        let mut shape = Shape {
            family,
            coeffs: Vec::new(),
            knots: Vec::new(),
            mirror: false,
            negate: false,
        };
        for slot in shape.slots(size) {
            shape.coeffs.push(match slot {
                Slot::NonNegative => magnitude(rng, range),
                Slot::Signed => signed(rng, range),
            });
        }
        let knot_count = match family {
            Family::ConvexPositiveDeriv | Family::Concave | Family::ConvexPiecewiseLinear => size,
            Family::StepFunction => size,
            Family::SmoothGeneral => 1,
            Family::Linear => 0,
        };
        shape.knots = (0..knot_count).map(|_| rng.random::<f64>()).collect();
        if family == Family::StepFunction {
            shape.knots.sort_by(f64::total_cmp);
        }
        if matches!(family, Family::ConvexPositiveDeriv | Family::Concave) {
            shape.mirror = rng.random_bool(0.5);
        }
        shape
    }

    fn slots(&self, size: usize) -> Vec<Slot> {
        use Slot::*;
        match self.family {
            // offset, slope, atoms
            Family::ConvexPositiveDeriv | Family::Concave => {
                let mut s = vec![Signed, NonNegative];
                s.extend(core::iter::repeat_n(NonNegative, size));
                s
            }
            Family::ConvexPiecewiseLinear => {
                let mut s = vec![Signed, Signed];
                s.extend(core::iter::repeat_n(NonNegative, size));
                s
            }
            // degree + 1 polynomial coefficients, then the sine amplitude
            Family::SmoothGeneral => vec![Signed; size + 2],
            // levels
            Family::StepFunction => vec![Signed; size + 1],
            Family::Linear => vec![Signed, Signed],
        }
    }

    fn coeff_count_to_size(&self) -> usize {
        match self.family {
            Family::ConvexPositiveDeriv | Family::Concave | Family::ConvexPiecewiseLinear => {
                self.coeffs.len() - 2
            }
            Family::SmoothGeneral => self.coeffs.len() - 2,
            Family::StepFunction => self.coeffs.len() - 1,
            Family::Linear => 1,
        }
    }

    /// Gaussian move of every parameter with standard deviation `sigma`
    /// (relative to the coefficient range and to the interval), projected
    /// back onto the family.
    pub fn perturb(&self, sigma: f64, range: (f64, f64), rng: &mut impl Rng) -> Shape {
        let mut out = self.clone();
        let hi = range.1.max(range.0).max(f64::MIN_POSITIVE);
        let coeff_noise = Normal::new(0.0, sigma * hi).expect("finite sigma");
        let knot_noise = Normal::new(0.0, sigma).expect("finite sigma");
        let slots = self.slots(self.coeff_count_to_size());
        for (c, slot) in out.coeffs.iter_mut().zip(slots) {
            let moved = *c + coeff_noise.sample(rng);
            *c = match slot {
                Slot::NonNegative => moved.clamp(0.0, hi),
                Slot::Signed => moved.clamp(-hi, hi),
            };
        }
        for k in &mut out.knots {
            *k = (*k + knot_noise.sample(rng)).clamp(0.0, 1.0);
        }
        if out.family == Family::StepFunction {
            out.knots.sort_by(f64::total_cmp);
        }
        out
    }

    /// Sorts step levels so the function is monotone, increasing unless
    /// `decreasing`.
    pub fn make_monotone(&mut self, decreasing: bool) {
        if self.family == Family::StepFunction {
            self.coeffs.sort_by(f64::total_cmp);
            if decreasing {
                self.coeffs.reverse();
            }
        }
    }

    pub fn to_expr(&self, iv: &Interval) -> Expr {
        let e = match self.family {
            Family::ConvexPositiveDeriv => self.positive_deriv(iv),
            Family::Concave => -self.positive_deriv(iv),
            Family::ConvexPiecewiseLinear => self.piecewise_linear(iv),
            Family::SmoothGeneral => self.smooth(iv),
            Family::StepFunction => self.step(iv),
            Family::Linear => {
                Expr::Const(self.coeffs[0]) + Expr::Const(self.coeffs[1]) * scaled(iv)
            }
        };
        if self.negate {
            -e
        } else {
            e
        }
    }

    fn positive_deriv(&self, iv: &Interval) -> Expr {
        let (a, b, len) = (iv.a(), iv.b(), iv.length());
        let mut e = Expr::Const(self.coeffs[0]);
        let slope = self.coeffs[1];
        e = e + if self.mirror {
            Expr::Const(slope) * (Expr::Const(b) - Expr::Var)
        } else {
            Expr::Const(slope) * (Expr::Var - Expr::Const(a))
        };
        for (j, (&c, &u)) in self.coeffs[2..].iter().zip(&self.knots).enumerate() {
            if c == 0.0 {
                continue;
            }
            // f' picks up c ((x - t)₊ / L)^p; integrate once.
            let p = (j % 2 + 1) as f64;
            let scale = c / ((p + 1.0) * libm::pow(len, p));
            let (t, atom) = if self.mirror {
                let t = b - u * len;
                (t, Expr::pow(Expr::Const(t) - Expr::Var, p + 1.0))
            } else {
                let t = a + u * len;
                (t, Expr::pow(Expr::Var - Expr::Const(t), p + 1.0))
            };
            let atom = Expr::Const(scale) * atom;
            let eps = 1e-9 * len;
            let live_everywhere = if self.mirror { t >= b - eps } else { t <= a + eps };
            let dead_everywhere = if self.mirror { t <= a + eps } else { t >= b - eps };
            if dead_everywhere {
                continue;
            }
            let term = if live_everywhere {
                atom
            } else {
                let left = Interval::new(a, t).expect("interior knot");
                let right = Interval::new(t, b).expect("interior knot");
                let (l, r) = if self.mirror {
                    (atom, Expr::Const(0.0))
                } else {
                    (Expr::Const(0.0), atom)
                };
                Expr::piecewise(vec![
                    Piece { guard: left, body: l },
                    Piece { guard: right, body: r },
                ])
                .expect("adjacent guards")
            };
            e = e + term;
        }
        e
    }

    fn piecewise_linear(&self, iv: &Interval) -> Expr {
        let mut e = Expr::Const(self.coeffs[0]) + Expr::Const(self.coeffs[1]) * scaled(iv);
        for (&c, &u) in self.coeffs[2..].iter().zip(&self.knots) {
            if c != 0.0 {
                let t = iv.lerp(u);
                e = e + Expr::Const(c) * (Expr::Var - Expr::Const(t)).abs();
            }
        }
        e
    }

    fn smooth(&self, iv: &Interval) -> Expr {
        let s = scaled(iv);
        let n = self.coeffs.len() - 1;
        let mut e = Expr::Const(0.0);
        for (i, &c) in self.coeffs[..n].iter().enumerate() {
            e = e + Expr::Const(c) * Expr::pow(s.clone(), i as f64);
        }
        let freq = core::f64::consts::PI * (1.0 + 3.0 * self.knots[0]);
        e + Expr::Const(self.coeffs[n]) * (Expr::Const(freq) * s).sin()
    }

    fn step(&self, iv: &Interval) -> Expr {
        let jumps: Vec<f64> = self.knots.iter().map(|&u| iv.lerp(u)).collect();
        step_function(iv, &jumps, &self.coeffs).unwrap_or(Expr::Const(self.coeffs[0]))
    }
}

/// `(x - a) / (b - a)`.
fn scaled(iv: &Interval) -> Expr {
    (Expr::Var - Expr::Const(iv.a())) / Expr::Const(iv.length())
}

/// Piecewise constant function with `levels[i]` between the `i`-th and
/// `(i+1)`-th jump. Jumps outside the open interval, or closer together
/// than a relative `1e-9`, are merged away.
pub fn step_function(iv: &Interval, jumps: &[f64], levels: &[f64]) -> Result<Expr, PiecewiseError> {
    let mut edges = vec![iv.a()];
    let mut vals = Vec::new();
    let eps = 1e-9 * iv.length();
    for (i, &t) in jumps.iter().enumerate() {
        if t > *edges.last().expect("nonempty") + eps && t < iv.b() - eps {
            edges.push(t);
            vals.push(levels.get(i).copied().unwrap_or(0.0));
        }
    }
    edges.push(iv.b());
    vals.push(levels.get(jumps.len()).copied().unwrap_or(0.0));
    if vals.len() == 1 {
        return Ok(Expr::Const(vals[0]));
    }
    let pieces = edges
        .windows(2)
        .zip(vals)
        .map(|(w, v)| Piece {
            guard: Interval::new(w[0], w[1]).expect("increasing edges"),
            body: Expr::Const(v),
        })
        .collect();
    Expr::piecewise(pieces)
}

/// Interval, with probability one half the unit interval, otherwise
/// a random affine image of it.
pub(crate) fn random_interval(rng: &mut impl Rng) -> Interval {
    if rng.random_bool(0.5) {
        Interval::unit()
    } else {
        let a = rng.random_range(-2.0..2.0);
        let len = rng.random_range(0.5..3.0);
        Interval::new(a, a + len).expect("positive length")
    }
}

pub(crate) fn pick<T: Copy>(rng: &mut impl Rng, options: &[T]) -> T {
    options[rng.random_range(0..options.len())]
}

/// Deterministic member of the family described by `spec`.
pub fn generate(spec: &FamilySpec) -> Expr {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Shape::sample(spec.family, spec.size, spec.coeff_range, &mut rng).to_expr(&spec.interval)
}

/// The hypothesis a family guarantees, checked on a profile.
pub fn declared_hypothesis_holds(family: Family, p: &FuncProfile) -> bool {
    match family {
        Family::ConvexPositiveDeriv => p.deriv_abs_convex() == Some(true) && p.convex(),
        Family::ConvexPiecewiseLinear => p.convex(),
        Family::Concave => p.concave() && p.deriv_abs_convex() == Some(true),
        Family::Linear => p.convex() && p.concave() && p.deriv_abs_convex() == Some(true),
        Family::SmoothGeneral => p.lipschitz().is_some(),
        Family::StepFunction => p.total_variation().is_some(),
    }
}
