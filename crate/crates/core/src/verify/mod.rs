//! Property harness: random hypothesis-satisfying function families,
//! seeded verification suites, the sharpness witnesses, a tightness
//! search, and the `h(β)` table.
//!
//! Each suite case is a pure function of `(config, index)`: the seed keys
//! a ChaCha8 generator and the index selects its stream. Parallel callers
//! can therefore evaluate cases in any order and sort by index.

mod families;
mod search;
mod sharpness;
mod suite;

use alloc::vec::Vec;

use crate::bounds::{h_constant, BoundError};

pub use families::{declared_hypothesis_holds, generate, step_function, Family, FamilySpec, Shape};
pub use search::{tightness_search, SearchConfig, TightnessReport};
pub use sharpness::{check_witness, sharpness_suite, Level, Witness, WITNESSES};
pub use suite::{
    case_id, case_rng, chain_ordered, check_pair, default_families, evaluate_bound, measure,
    run_case, run_suite, run_suite_detailed, summarize, tightness_ratio, CaseOutcome, Summary,
    SuiteConfig,
};

/// Forward-difference step of the `h'` column.
pub const H_CURVE_DELTA: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HPoint {
    pub beta: f64,
    pub h: f64,
    /// `(h(β+δ) - h(β))/δ`.
    pub dh: f64,
}

/// `h(β)` and its forward difference on each grid point.
pub fn h_curve(grid: &[f64]) -> Result<Vec<HPoint>, BoundError> {
    grid.iter()
        .map(|&beta| {
            let h = h_constant(beta)?;
            let dh = (h_constant(beta + H_CURVE_DELTA)? - h) / H_CURVE_DELTA;
            Ok(HPoint { beta, h, dh })
        })
        .collect()
}

/// `steps` evenly spaced points from `from` to `to` inclusive.
pub fn linear_grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => alloc::vec![from],
        n => (0..n)
            .map(|i| from + (to - from) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_endpoints_and_rejection() {
        let c = h_curve(&[1.0, 2.0]).unwrap();
        assert!((c[0].h - 1.0 / 12.0).abs() < 1e-14);
        assert!((c[1].h - 0.5 / 30f64.sqrt()).abs() < 1e-14);
        assert!(c.iter().all(|p| p.dh > 0.0));
        assert!(h_curve(&[0.0]).is_err());
        assert!(h_curve(&[-3.0]).is_err());
    }

    #[test]
    fn grid_shape() {
        assert_eq!(linear_grid(1.0, 3.0, 3), alloc::vec![1.0, 2.0, 3.0]);
        assert!(linear_grid(1.0, 3.0, 0).is_empty());
    }
}
