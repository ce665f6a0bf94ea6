use core::f64::consts::PI;
use core::fmt;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainError {
    pub x: f64,
    pub y: f64,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "beta function needs positive arguments, got ({}, {})", self.x, self.y)
    }
}

impl core::error::Error for DomainError {}

/// `ln Γ(x)` for `x > 0` by the Lanczos approximation (g = 7, 9 terms).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return libm::log(PI / libm::sin(PI * x).abs()) - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * libm::log(2.0 * PI) + (z + 0.5) * libm::log(t) - t + libm::log(acc)
}

/// Euler's Beta function `Γ(x)Γ(y)/Γ(x+y)`.
pub fn beta(x: f64, y: f64) -> Result<f64, DomainError> {
    if !(x > 0.0 && y > 0.0) {
        return Err(DomainError { x, y });
    }
    Ok(libm::exp(ln_beta_unchecked(x, y)))
}

pub(crate) fn ln_beta_unchecked(x: f64, y: f64) -> f64 {
    ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// B(m, n) for integers by B(m, 1) = 1/m and B(m, n+1) = B(m, n) n / (m + n).
    fn beta_integer(m: u32, n: u32) -> f64 {
        let mut b = 1.0 / m as f64;
        for k in 1..n {
            b *= k as f64 / (m + k) as f64;
        }
        b
    }

    #[test]
    fn small_integer_values() {
        assert!((beta(2.0, 2.0).unwrap() - 1.0 / 6.0).abs() < 1e-14);
        assert!((beta(3.0, 3.0).unwrap() - 1.0 / 30.0).abs() < 1e-14);
        assert!((beta(1.0, 1.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn relative_accuracy_on_integer_grid() {
        let grid = [1u32, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 200];
        for &m in &grid {
            for &n in &grid {
                let exact = beta_integer(m, n);
                let got = beta(m as f64, n as f64).unwrap();
                let rel = ((got - exact) / exact).abs();
                assert!(rel < 1e-12, "B({m},{n}): rel {rel:e}");
            }
        }
    }

    #[test]
    fn ln_gamma_against_libm() {
        for i in 1..400 {
            let x = 0.05 * i as f64;
            let diff = (ln_gamma(x) - libm::lgamma(x)).abs();
            assert!(diff < 1e-12 * libm::lgamma(x).abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn symmetric_and_unit_second_argument() {
        for x in [0.5, 1.0, 2.5, 10.0] {
            assert!((beta(x, 1.0).unwrap() - 1.0 / x).abs() < 1e-12);
            assert!((beta(x, 3.7).unwrap() - beta(3.7, x).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(beta(0.0, 1.0).is_err());
        assert!(beta(1.0, -2.0).is_err());
        assert!(beta(f64::NAN, 1.0).is_err());
    }
}
