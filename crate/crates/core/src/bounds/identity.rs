//! Kernel representations of the two defects, checked numerically.
//!
//! With `x(t) = a t/2 + b (1 - t/2)` and `y(t) = b t/2 + a (1 - t/2)`
//! (so `x + y = a + b`):
//!
//! ```text
//! N(1/4,1/2) - mean = w^2/16 * int_0^1 t(1-t)  [f''(x) + f''(y)] dt
//! N(1/6,2/3) - mean = w^2/48 * int_0^1 t(2-3t) [f''(x) + f''(y)] dt
//! ```
//!
//! Both sides are computed independently: the left through the reference
//! integrator on `f`, the right through the same integrator on the kernel in
//! `t` with `f''` taken from jets.

use super::{second_at, WeightPair};
use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::interval::Interval;
use crate::oracle::{integrate_mean, Integrator};

/// Integrator tolerance used for both sides of an identity check.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Rounding allowance, in ulps of `scale`, for the subtraction that forms
/// the left side. On narrow intervals the Simpson defect falls below
/// `1e-8 * EPS * |f|` relative resolution and only this floor is meaningful.
pub const ROUNDING_ULPS: f64 = 8.0;

/// The pair `(x, y)` at parameter `t`.
fn symmetric_pair(iv: Interval, t: f64) -> (f64, f64) {
    let (a, b) = (iv.a(), iv.b());
    (a * t / 2.0 + b * (1.0 - t / 2.0), b * t / 2.0 + a * (1.0 - t / 2.0))
}

/// `(2h(mid), h(x) + h(y), h(a) + h(b))` for the symmetric pair at `t`.
/// Non-decreasing whenever `h` is convex on `iv`.
pub fn symmetric_pair_triple(h: &Expression, iv: Interval, t: f64) -> Result<[f64; 3]> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("t = {t} outside [0, 1]")));
    }
    let (x, y) = symmetric_pair(iv, t);
    Ok([
        2.0 * h.eval(iv.mid())?,
        h.eval(x)? + h.eval(y)?,
        h.eval(iv.a())? + h.eval(iv.b())?,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    /// Weighted-node value minus the integrated mean.
    pub lhs: f64,
    /// The kernel integral.
    pub rhs: f64,
    /// Magnitude of the quantities the left side was formed from.
    pub scale: f64,
}

impl IdentityCheck {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    /// Residual relative to the larger side, floored at the rounding level
    /// of the subtraction that produced `lhs`.
    pub fn relative_residual(&self) -> f64 {
        let denom = self.lhs.abs().max(self.rhs.abs()).max(f64::EPSILON * self.scale);
        if denom == 0.0 {
            0.0
        } else {
            self.residual() / denom
        }
    }

    /// `|lhs - rhs| <= rel * max(|lhs|, |rhs|)`, up to the rounding floor
    /// [`ROUNDING_ULPS`] `* EPS * scale`.
    pub fn within(&self, rel: f64) -> bool {
        let floor = ROUNDING_ULPS * f64::EPSILON * self.scale;
        self.residual() <= rel * self.lhs.abs().max(self.rhs.abs()) + floor
    }
}

fn kernel_identity(
    f: &Expression,
    iv: Interval,
    weights: WeightPair,
    prefactor: f64,
    kernel: impl Fn(f64) -> f64,
) -> Result<IdentityCheck> {
    let bound = super::n_value(f, iv, weights)?;
    let mean = integrate_mean(f, iv, IDENTITY_TOL)?.value;
    let integral = Integrator::new(IDENTITY_TOL)?
        .mean_of(Interval::unit(), |t| {
            let (x, y) = symmetric_pair(iv, t);
            Ok(kernel(t) * (second_at(f, x)? + second_at(f, y)?))
        })?
        .value;
    let w2 = iv.width() * iv.width();
    Ok(IdentityCheck { lhs: bound - mean, rhs: prefactor * w2 * integral, scale: bound.abs() + mean.abs() })
}

/// Both sides of the kernel identity for the `N(1/4, 1/2)` defect.
pub fn quarter_kernel_identity(f: &Expression, iv: Interval) -> Result<IdentityCheck> {
    kernel_identity(f, iv, WeightPair::QUARTER, 1.0 / 16.0, |t| t * (1.0 - t))
}

/// Both sides of the kernel identity for the Simpson defect.
pub fn simpson_kernel_identity(f: &Expression, iv: Interval) -> Result<IdentityCheck> {
    kernel_identity(f, iv, WeightPair::SIMPSON, 1.0 / 48.0, |t| t * (2.0 - 3.0 * t))
}
