/// Largest denominator tried by [`approx_rational`].
pub const MAX_DENOMINATOR: i64 = 120;
/// Distance within which a value is annotated as a fraction.
pub const RATIONAL_TOL: f64 = 1e-9;

/// The fraction `p/q` with the smallest `q <= 120` within `1e-9` of `x`.
pub fn approx_rational(x: f64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e6 {
        return None;
    }
    (1..=MAX_DENOMINATOR).find_map(|q| {
        let p = (x * q as f64).round();
        ((x - p / q as f64).abs() <= RATIONAL_TOL).then_some((p as i64, q))
    })
}

/// `x`, followed by `≈ p/q` when a small fraction is close.
pub fn annotate(x: f64) -> String {
    match approx_rational(x) {
        Some((p, 1)) => format!("{x} (≈ {p})"),
        Some((p, q)) => format!("{x} (≈ {p}/{q})"),
        None => format!("{x}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_constants() {
        assert_eq!(approx_rational(1.0 / 72.0), Some((1, 72)));
        assert_eq!(approx_rational(1.0 / 12.0 + 5e-10), Some((1, 12)));
        assert_eq!(approx_rational(-0.25), Some((-1, 4)));
        assert_eq!(approx_rational(4.0 / 45.0), Some((4, 45)));
        assert_eq!(approx_rational(2.0), Some((2, 1)));
        assert_eq!(approx_rational(0.5 / 30f64.sqrt()), None);
        assert_eq!(approx_rational(f64::NAN), None);
    }

    #[test]
    fn annotation_keeps_raw_value() {
        assert_eq!(annotate(0.125), "0.125 (≈ 1/8)");
        assert!(annotate(std::f64::consts::PI).starts_with("3.14159"));
    }
}
