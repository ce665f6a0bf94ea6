use alloc::string::{String, ToString};

use rand::Rng;

use super::families::{pick, Family, Shape};
use super::suite::{
    case_id, case_rng, check_pair, conform, default_families, tightness_ratio,
};
use crate::bounds::TheoremId;
use crate::calculus::Exponent;
use crate::{Interval, DEFAULT_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub theorem: TheoremId,
    pub iterations: usize,
    pub seed: u64,
    pub alpha: Exponent,
    pub tol: f64,
    pub size: usize,
    pub coeff_range: (f64, f64),
    /// Forces the families of `f` and `g`.
    pub families: Option<(Family, Family)>,
    /// Iterations between random restarts.
    pub restart_every: usize,
    /// Non-improving steps between shrinking the step size.
    pub anneal_every: usize,
    pub anneal_factor: f64,
    pub initial_sigma: f64,
}

impl SearchConfig {
    pub fn new(theorem: TheoremId, iterations: usize, seed: u64) -> Self {
        SearchConfig {
            theorem,
            iterations,
            seed,
            alpha: Exponent::Finite(2.0),
            tol: DEFAULT_TOL,
            size: 2,
            coeff_range: (0.0, 3.0),
            families: None,
            restart_every: 1000,
            anneal_every: 100,
            anneal_factor: 0.9,
            initial_sigma: 0.25,
        }
    }
}

/// Largest ratio of measured quantity to bound found by the search.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TightnessReport {
    pub theorem: TheoremId,
    pub iterations: usize,
    /// Candidates with a defined ratio.
    pub evaluated: usize,
    /// Candidates skipped as degenerate or inapplicable.
    pub skipped: usize,
    pub best_ratio: Option<f64>,
    pub best_f: Option<String>,
    pub best_g: Option<String>,
    pub best_inner: Option<(f64, f64)>,
}

impl TightnessReport {
    pub fn exceeds(&self, limit: f64) -> bool {
        self.best_ratio.is_some_and(|r| r > limit)
    }
}

#[derive(Clone)]
struct State {
    f: Shape,
    g: Shape,
    /// Relative position of the inner interval.
    inner: (f64, f64),
}

impl State {
    fn inner_interval(&self, iv: &Interval) -> Option<Interval> {
        let (u, v) = (self.inner.0.min(self.inner.1), self.inner.0.max(self.inner.1));
        if v - u < 1e-6 || v - u > 1.0 - 1e-6 {
            return None;
        }
        Interval::new(iv.lerp(u), iv.lerp(v)).ok()
    }
}

fn fresh(cfg: &SearchConfig, rng: &mut impl Rng) -> State {
    let (ff, gf) = default_families(cfg.theorem);
    let (f_family, g_family) = cfg
        .families
        .unwrap_or_else(|| (pick(rng, ff), pick(rng, gf)));
    let mut f = Shape::sample(f_family, cfg.size, cfg.coeff_range, rng);
    let mut g = Shape::sample(g_family, cfg.size, cfg.coeff_range, rng);
    conform(cfg.theorem, &mut f, rng);
    conform(cfg.theorem, &mut g, rng);
    let mut u = rng.random::<f64>();
    let mut v = rng.random::<f64>();
    if u > v {
        core::mem::swap(&mut u, &mut v);
    }
    State { f, g, inner: (u, v) }
}

fn perturb(s: &State, sigma: f64, cfg: &SearchConfig, rng: &mut impl Rng) -> State {
    let jitter = |x: f64, rng: &mut dyn rand::RngCore| -> f64 {
        use rand_distr::{Distribution, Normal};
        let n = Normal::new(0.0, sigma).expect("finite sigma");
        (x + n.sample(rng)).clamp(0.0, 1.0)
    };
    State {
        f: s.f.perturb(sigma, cfg.coeff_range, rng),
        g: s.g.perturb(sigma, cfg.coeff_range, rng),
        inner: (jitter(s.inner.0, rng), jitter(s.inner.1, rng)),
    }
}

fn score(cfg: &SearchConfig, s: &State) -> Option<f64> {
    let iv = Interval::unit();
    let f = s.f.to_expr(&iv);
    let g = s.g.to_expr(&iv);
    let inner = if cfg.theorem.is_mean_difference() {
        Some(s.inner_interval(&iv)?)
    } else {
        None
    };
    let id = case_id(cfg.theorem, cfg.seed, 0);
    let (_, v) = check_pair(cfg.theorem, id, &f, &g, &iv, inner.as_ref(), cfg.alpha, cfg.tol);
    tightness_ratio(&v)
}

/// Random-restart hill climb maximizing the tightness ratio on `[0, 1]`.
///
/// Steps are Gaussian with a standard deviation shrunk by
/// `anneal_factor` after every `anneal_every` non-improving steps; the
/// climb restarts from a fresh random pair every `restart_every`
/// iterations. Theorems without a numeric bound (the sign and moment
/// tests) produce an empty report.
pub fn tightness_search(cfg: &SearchConfig) -> TightnessReport {
    let mut report = TightnessReport {
        theorem: cfg.theorem,
        iterations: cfg.iterations,
        evaluated: 0,
        skipped: 0,
        best_ratio: None,
        best_f: None,
        best_g: None,
        best_inner: None,
    };
    if matches!(cfg.theorem, TheoremId::ChebyshevSign | TheoremId::Atkinson) {
        return report;
    }
    let mut rng = case_rng(cfg.seed, u64::MAX);
    let mut current: Option<(State, f64)> = None;
    let mut sigma = cfg.initial_sigma;
    let mut stale = 0;
    for it in 0..cfg.iterations {
        let restart = it % cfg.restart_every.max(1) == 0;
        let candidate = match (&current, restart) {
            (Some((s, _)), false) => perturb(s, sigma, cfg, &mut rng),
            _ => {
                sigma = cfg.initial_sigma;
                stale = 0;
                current = None;
                fresh(cfg, &mut rng)
            }
        };
        let Some(r) = score(cfg, &candidate) else {
            report.skipped += 1;
            stale += 1;
            if stale % cfg.anneal_every.max(1) == 0 {
                sigma *= cfg.anneal_factor;
            }
            continue;
        };
        report.evaluated += 1;
        if report.best_ratio.is_none_or(|b| r > b) {
            let iv = Interval::unit();
            report.best_ratio = Some(r);
            report.best_f = Some(candidate.f.to_expr(&iv).to_string());
            report.best_g = Some(candidate.g.to_expr(&iv).to_string());
            report.best_inner = cfg.theorem.is_mean_difference().then(|| {
                let i = candidate.inner_interval(&iv).expect("scored");
                (i.a(), i.b())
            });
        }
        match &current {
            Some((_, c)) if r < *c => {
                stale += 1;
                if stale % cfg.anneal_every.max(1) == 0 {
                    sigma *= cfg.anneal_factor;
                }
            }
            _ => {
                if current.as_ref().is_some_and(|(_, c)| r > *c) {
                    stale = 0;
                }
                current = Some((candidate, r));
            }
        }
    }
    report
}
