//! Truncated Taylor arithmetic of order four.
//!
//! A [`Series`] holds normalized coefficients `c[k] = u^(k)(x) / k!` of some
//! intermediate quantity `u` around the evaluation point. Every primitive is
//! propagated with the usual recurrences, so the coefficients of a composite
//! expression are exact up to rounding. Polynomials of degree <= 4 are
//! reproduced exactly.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::DomainError;

/// Number of stored coefficients (orders 0 through 4).
pub const ORDER: usize = 5;

const FACTORIAL: [f64; ORDER] = [1.0, 1.0, 2.0, 6.0, 24.0];

/// Smallest divisor magnitude accepted by jet and scalar division.
pub(crate) const DIV_EPS: f64 = 1e-300;

/// Value and first four derivatives of a function at a point, stored as
/// scaled Taylor coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet4 {
    pub point: f64,
    pub coeffs: [f64; ORDER],
}

impl Jet4 {
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `f^(k)(point) = k! * c_k`.
    pub fn derivative(&self, k: usize) -> f64 {
        FACTORIAL[k] * self.coeffs[k]
    }

    /// All five derivatives `(f, f', f'', f''', f'''')`.
    pub fn derivatives(&self) -> [f64; ORDER] {
        std::array::from_fn(|k| self.derivative(k))
    }

    pub fn second(&self) -> f64 {
        self.derivative(2)
    }

    pub fn fourth(&self) -> f64 {
        self.derivative(4)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Series(pub [f64; ORDER]);

impl Series {
    pub fn constant(c: f64) -> Self {
        Series([c, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn variable(x: f64) -> Self {
        Series([x, 1.0, 0.0, 0.0, 0.0])
    }

    fn head(&self) -> f64 {
        self.0[0]
    }

    fn is_constant(&self) -> bool {
        self.0[1..].iter().all(|&c| c == 0.0)
    }

    pub fn recip(self) -> Result<Self, DomainError> {
        Series::constant(1.0).checked_div(self)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self, DomainError> {
        let d = rhs.head();
        if d.abs() <= DIV_EPS {
            return Err(DomainError::DivisionByZero);
        }
        let mut q = [0.0; ORDER];
        for k in 0..ORDER {
            let mut acc = self.0[k];
            for j in 1..=k {
                acc -= rhs.0[j] * q[k - j];
            }
            q[k] = acc / d;
        }
        Ok(Series(q))
    }

    pub fn exp(self) -> Self {
        let mut e = [0.0; ORDER];
        e[0] = self.head().exp();
        for k in 1..ORDER {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.0[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        Series(e)
    }

    pub fn ln(self) -> Result<Self, DomainError> {
        let a0 = self.head();
        if a0 <= 0.0 {
            return Err(DomainError::LogNonPositive(a0));
        }
        let mut l = [0.0; ORDER];
        l[0] = a0.ln();
        for k in 1..ORDER {
            let mut acc = 0.0;
            for j in 1..k {
                acc += j as f64 * l[j] * self.0[k - j];
            }
            l[k] = (self.0[k] - acc / k as f64) / a0;
        }
        Ok(Series(l))
    }

    /// `(sin u, cos u)` via the coupled recurrence.
    pub fn sin_cos(self) -> (Self, Self) {
        let mut s = [0.0; ORDER];
        let mut c = [0.0; ORDER];
        s[0] = self.head().sin();
        c[0] = self.head().cos();
        for k in 1..ORDER {
            let (mut ds, mut dc) = (0.0, 0.0);
            for j in 1..=k {
                let ja = j as f64 * self.0[j];
                ds += ja * c[k - j];
                dc += ja * s[k - j];
            }
            s[k] = ds / k as f64;
            c[k] = -dc / k as f64;
        }
        (Series(s), Series(c))
    }

    pub fn sqrt(self) -> Result<Self, DomainError> {
        let a0 = self.head();
        if a0 < 0.0 {
            return Err(DomainError::SqrtNegative(a0));
        }
        if a0 == 0.0 {
            return self.power_at_zero(0.5);
        }
        Ok(self.real_power(0.5))
    }

    pub fn abs(self) -> Result<Self, DomainError> {
        let a0 = self.head();
        if a0 == 0.0 {
            if self.is_constant() {
                return Ok(self);
            }
            return Err(DomainError::AbsAtZero);
        }
        Ok(if a0 < 0.0 { -self } else { self })
    }

    /// `u^p` for a constant real exponent.
    pub fn powf(self, p: f64) -> Result<Self, DomainError> {
        if p == p.trunc() && p.abs() <= 64.0 {
            let n = p.abs() as u32;
            let pos = self.powi(n);
            return if p < 0.0 { pos.recip() } else { Ok(pos) };
        }
        let a0 = self.head();
        if a0 < 0.0 {
            return Err(DomainError::NegativeBase { base: a0, exponent: p });
        }
        if a0 == 0.0 {
            return self.power_at_zero(p);
        }
        Ok(self.real_power(p))
    }

    /// `u^p` for non-integer `p` where `u` vanishes. With `u' > 0` the
    /// derivatives of order `k < p` are zero and those of order `k > p`
    /// diverge; the latter are reported as signed infinities.
    fn power_at_zero(self, p: f64) -> Result<Self, DomainError> {
        if self.is_constant() {
            return if p > 0.0 { Ok(Series::constant(0.0)) } else { Err(DomainError::DivisionByZero) };
        }
        if p < 0.0 {
            return Err(DomainError::DivisionByZero);
        }
        if self.0[1] <= 0.0 {
            return Err(DomainError::SingularPower { exponent: p });
        }
        let mut y = [0.0; ORDER];
        let mut falling = 1.0;
        for (k, c) in y.iter_mut().enumerate() {
            if k as f64 > p {
                *c = f64::INFINITY.copysign(falling);
            }
            falling *= p - k as f64;
        }
        Ok(Series(y))
    }

    fn powi(self, mut n: u32) -> Self {
        let mut base = self;
        let mut acc = Series::constant(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Power recurrence `y_k = 1/(k a0) * sum_j ((p+1) j - k) a_j y_{k-j}`;
    /// requires `a0 > 0`.
    fn real_power(self, p: f64) -> Self {
        let a0 = self.head();
        let mut y = [0.0; ORDER];
        y[0] = a0.powf(p);
        for k in 1..ORDER {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += ((p + 1.0) * j as f64 - k as f64) * self.0[j] * y[k - j];
            }
            y[k] = acc / (k as f64 * a0);
        }
        Series(y)
    }

    pub fn into_jet(self, point: f64) -> Jet4 {
        Jet4 { point, coeffs: self.0 }
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        Series(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        Series(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series(self.0.map(|c| -c))
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        // Exact zeros are skipped so that a divergent coefficient times a
        // structurally absent one (a constant factor, say) stays infinite
        // instead of turning into NaN.
        Series(std::array::from_fn(|k| {
            (0..=k)
                .filter(|&j| self.0[j] != 0.0 && rhs.0[k - j] != 0.0)
                .map(|j| self.0[j] * rhs.0[k - j])
                .sum()
        }))
    }
}

impl Div for Series {
    type Output = Result<Series, DomainError>;
    fn div(self, rhs: Series) -> Self::Output {
        self.checked_div(rhs)
    }
}
