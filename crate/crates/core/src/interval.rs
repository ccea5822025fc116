use std::fmt;

use crate::error::{Error, Result};

/// A bounded integration domain `[a, b]` with finite `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Interval { a, b })
        } else {
            Err(Error::InvalidInterval { a, b })
        }
    }

    /// The unit interval `[0, 1]`.
    pub fn unit() -> Self {
        Interval { a: 0.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Left and right halves.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { a: self.a, b: m }, Interval { a: m, b: self.b })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// A pair `(lower, upper)` claimed to bracket some real quantity.
///
/// Enclosures are built exactly as the underlying formula dictates. When the
/// hypotheses behind the formula fail (say, a concave integrand fed to the
/// classic bound) the ends may come out reversed; [`Enclosure::is_proper`]
/// reports that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enclosure {
    pub lower: f64,
    pub upper: f64,
}

impl Enclosure {
    pub fn new(lower: f64, upper: f64) -> Self {
        Enclosure { lower, upper }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn is_proper(&self) -> bool {
        self.lower <= self.upper + 1e-12 * (1.0 + self.lower.abs().max(self.upper.abs()))
    }

    /// `lower - slack <= x <= upper + slack`.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.lower - slack <= x && x <= self.upper + slack
    }

    /// Map through `x -> offset - x`, which swaps the ends.
    pub fn reflect(&self, offset: f64) -> Enclosure {
        Enclosure { lower: offset - self.upper, upper: offset - self.lower }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_intervals() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn reflect_swaps_ends() {
        let e = Enclosure::new(0.1, 0.3).reflect(1.0);
        assert_eq!((e.lower, e.upper), (0.7, 0.9));
    }
}
