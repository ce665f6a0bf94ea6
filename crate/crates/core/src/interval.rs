use core::fmt;

/// A closed interval `[a, b]` with `a < b`, both finite.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "(f64, f64)", into = "(f64, f64)"))]
pub struct Interval {
    a: f64,
    b: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IntervalError {
    /// `a >= b`.
    Empty { a: f64, b: f64 },
    NotFinite,
}

impl fmt::Display for IntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalError::Empty { a, b } => {
                write!(f, "interval [{a}, {b}] is empty: need a < b")
            }
            IntervalError::NotFinite => f.write_str("interval endpoints must be finite"),
        }
    }
}

impl core::error::Error for IntervalError {}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self, IntervalError> {
        if !a.is_finite() || !b.is_finite() {
            return Err(IntervalError::NotFinite);
        }
        if a >= b {
            return Err(IntervalError::Empty { a, b });
        }
        Ok(Interval { a, b })
    }

    /// The unit interval `[0, 1]`.
    pub const fn unit() -> Self {
        Interval { a: 0.0, b: 1.0 }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    #[inline]
    pub fn contains(&self, t: f64) -> bool {
        self.a <= t && t <= self.b
    }

    /// Points strictly inside the interval.
    #[inline]
    pub fn contains_interior(&self, t: f64) -> bool {
        self.a < t && t < self.b
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.a <= other.a && other.b <= self.b
    }

    /// `a + s (b - a)` for `s` in `[0, 1]`.
    #[inline]
    pub fn lerp(&self, s: f64) -> f64 {
        self.a + s * (self.b - self.a)
    }
}

impl TryFrom<(f64, f64)> for Interval {
    type Error = IntervalError;

    fn try_from((a, b): (f64, f64)) -> Result<Self, Self::Error> {
        Interval::new(a, b)
    }
}

impl From<Interval> for (f64, f64) {
    fn from(iv: Interval) -> Self {
        (iv.a, iv.b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}
