//! The six elementary two-argument means and enclosures for the logarithmic
//! and identric means that follow from the Simpson and `N(1/4, 1/2)` defect
//! sandwiches applied to `e^t`, `1/t`, `-log t` and `t log t`.
//!
//! Throughout, `d = (b - a)/(b + a)` is the symmetric relative gap; writing
//! `a = A(1 - d)`, `b = A(1 + d)` turns the cancellation-prone differences
//! into closed forms in `d`.

use crate::error::{Error, Result};
use crate::interval::Enclosure;

/// Below this relative gap `|b - a| / min(a, b)`, L and I switch to series.
pub const SERIES_GAP: f64 = 1e-6;

/// Harmonic, geometric, logarithmic, identric, arithmetic and Gini means,
/// ordered `H <= G <= L <= I <= A <= S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSet {
    pub harmonic: f64,
    pub geometric: f64,
    pub logarithmic: f64,
    pub identric: f64,
    pub arithmetic: f64,
    pub gini: f64,
}

impl MeanSet {
    /// `[H, G, L, I, A, S]`.
    pub fn as_array(&self) -> [f64; 6] {
        [self.harmonic, self.geometric, self.logarithmic, self.identric, self.arithmetic, self.gini]
    }

    pub const NAMES: [&'static str; 6] = ["H", "G", "L", "I", "A", "S"];
}

fn check_positive(a: f64, b: f64) -> Result<()> {
    if a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("means need positive finite arguments, got ({a}, {b})")))
    }
}

fn check_distinct(a: f64, b: f64) -> Result<()> {
    check_positive(a, b)?;
    if a == b {
        return Err(Error::InvalidArgument("enclosure needs a != b".into()));
    }
    Ok(())
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (b - a).abs() / a.min(b)
}

/// `(b - a)/(b + a)`.
fn sym_gap(a: f64, b: f64) -> f64 {
    (b - a) / (b + a)
}

pub fn arithmetic(a: f64, b: f64) -> f64 {
    0.5 * a + 0.5 * b
}

pub fn geometric(a: f64, b: f64) -> f64 {
    a.sqrt() * b.sqrt()
}

pub fn harmonic(a: f64, b: f64) -> f64 {
    2.0 * a * (b / (a + b))
}

/// `L = (b - a)/(log b - log a)`.
pub fn logarithmic(a: f64, b: f64) -> f64 {
    if a == b {
        return a;
    }
    if relative_gap(a, b) < SERIES_GAP {
        let d2 = sym_gap(a, b).powi(2);
        return arithmetic(a, b) * (1.0 - d2 / 3.0 - 4.0 * d2 * d2 / 45.0);
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    (hi - lo) / ((hi - lo) / lo).ln_1p()
}

/// `I = (1/e) (b^b / a^a)^(1/(b - a))`, computed in log space.
pub fn identric(a: f64, b: f64) -> f64 {
    if a == b {
        return a;
    }
    if relative_gap(a, b) < SERIES_GAP {
        let d2 = sym_gap(a, b).powi(2);
        return arithmetic(a, b) * (-d2 / 6.0 - d2 * d2 / 20.0).exp();
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let x = (hi - lo) / lo;
    // log I = log lo + hi log(hi/lo)/(hi - lo) - 1
    (lo.ln() + (1.0 + x) * x.ln_1p() / x - 1.0).exp()
}

/// `S = a^(a/(a+b)) b^(b/(a+b))`, computed in log space.
pub fn gini(a: f64, b: f64) -> f64 {
    let s = a + b;
    ((a / s) * a.ln() + (b / s) * b.ln()).exp()
}

pub fn all_means(a: f64, b: f64) -> Result<MeanSet> {
    check_positive(a, b)?;
    if a == b {
        return Ok(MeanSet {
            harmonic: a,
            geometric: a,
            logarithmic: a,
            identric: a,
            arithmetic: a,
            gini: a,
        });
    }
    Ok(MeanSet {
        harmonic: harmonic(a, b),
        geometric: geometric(a, b),
        logarithmic: logarithmic(a, b),
        identric: identric(a, b),
        arithmetic: arithmetic(a, b),
        gini: gini(a, b),
    })
}

/// `A - H = (b - a)^2 / (2 (a + b))`.
fn a_minus_h(a: f64, b: f64) -> f64 {
    (b - a) * (b - a) / (2.0 * (a + b))
}

/// `A - G = (sqrt b - sqrt a)^2 / 2`.
fn a_minus_g(a: f64, b: f64) -> f64 {
    let r = b.sqrt() - a.sqrt();
    0.5 * r * r
}

/// Enclosure of `L`:
/// `(A + 2G)/3 - (2/81) ((A - G)/L)^2 (A + G) <= L <= (A + 2G)/3`.
///
/// The lower end references `L` itself and is evaluated with the directly
/// computed `L`; it certifies the inequality rather than estimating `L`.
pub fn log_mean_enclosure(a: f64, b: f64) -> Result<Enclosure> {
    check_distinct(a, b)?;
    let (am, gm, lm) = (arithmetic(a, b), geometric(a, b), logarithmic(a, b));
    let upper = (am + 2.0 * gm) / 3.0;
    let ratio = a_minus_g(a, b) / lm;
    Ok(Enclosure::new(upper - 2.0 / 81.0 * ratio * ratio * (am + gm), upper))
}

/// `(A + 2G)/3 - L`, accurate for nearby arguments.
pub fn log_mean_defect(a: f64, b: f64) -> Result<f64> {
    check_distinct(a, b)?;
    let d = sym_gap(a, b);
    if d.abs() < 1e-3 {
        // A [(1 + 2 sqrt(1 - d^2))/3 - d / atanh d], expanded in d
        let d2 = d * d;
        let series = d2 * d2
            * (1.0 / 180.0
                + d2 * (37.0 / 7560.0 + d2 * (3767.0 / 907200.0 + d2 * 213613.0 / 59875200.0)));
        return Ok(arithmetic(a, b) * series);
    }
    Ok((arithmetic(a, b) + 2.0 * geometric(a, b)) / 3.0 - logarithmic(a, b))
}

/// `(1/2)(1/A + 1/H) - 1/L`, accurate for nearby arguments.
pub fn recip_log_mean_defect(a: f64, b: f64) -> Result<f64> {
    check_distinct(a, b)?;
    let am = arithmetic(a, b);
    let d = sym_gap(a, b);
    if d.abs() < 1e-3 {
        // sum_k d^(2k) (1/2 - 1/(2k + 1)) / A
        let d2 = d * d;
        let series: f64 = (1..=5)
            .map(|k| d2.powi(k) * (0.5 - 1.0 / (2 * k + 1) as f64))
            .sum();
        return Ok(series / am);
    }
    Ok(0.5 * (1.0 / am + 1.0 / harmonic(a, b)) - 1.0 / logarithmic(a, b))
}

/// Enclosure of `(1/2)(1/A + 1/H) - 1/L`:
/// `(A - H)/(6 A^2) <= . <= A (A - H)/(6 H^2) (4/H - 3/A)`.
pub fn recip_log_mean_enclosure(a: f64, b: f64) -> Result<Enclosure> {
    check_distinct(a, b)?;
    let (am, hm) = (arithmetic(a, b), harmonic(a, b));
    let gap = a_minus_h(a, b);
    Ok(Enclosure::new(
        gap / (6.0 * am * am),
        am * gap / (6.0 * hm * hm) * (4.0 / hm - 3.0 / am),
    ))
}

/// Which exponent the upper end of [`identric_enclosure`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdentricExponent {
    /// `((b-a)^2/324) (1/a^2 + 1/b^2 - 2/A^2)`, the Simpson defect bound for
    /// `-log t`. Equivalently `(2/81) ((A-H)^2/H) (1/A + 2/H)`.
    #[default]
    Derived,
    /// `((A-H)^2/(162 H)) (1/A + 2/H)`, as it circulates in print. It is a
    /// quarter of the derived exponent and does not bound `I`.
    Printed,
}

/// Exponent of the upper identric bound.
pub fn identric_exponent(a: f64, b: f64, which: IdentricExponent) -> f64 {
    let (am, hm) = (arithmetic(a, b), harmonic(a, b));
    match which {
        IdentricExponent::Derived => {
            // 1/a^2 + 1/b^2 - 2/A^2 = 2 (3d^2 - d^4) / (A^2 (1 - d^2)^2)
            let d2 = sym_gap(a, b).powi(2);
            let spread = 2.0 * (3.0 * d2 - d2 * d2) / (am * am * (1.0 - d2) * (1.0 - d2));
            (b - a) * (b - a) / 324.0 * spread
        }
        IdentricExponent::Printed => {
            let gap = a_minus_h(a, b);
            gap * gap / (162.0 * hm) * (1.0 / am + 2.0 / hm)
        }
    }
}

/// `A^(2/3) G^(1/3) <= I <= A^(2/3) G^(1/3) exp(exponent)`.
pub fn identric_enclosure(a: f64, b: f64, which: IdentricExponent) -> Result<Enclosure> {
    check_distinct(a, b)?;
    let base = arithmetic(a, b).powf(2.0 / 3.0) * geometric(a, b).powf(1.0 / 3.0);
    Ok(Enclosure::new(base, base * identric_exponent(a, b, which).exp()))
}

/// Enclosure of `I(a^2, b^2)`:
/// `A^(4/3) S^(2/3) exp(-(4/81)(A-H)^2/(A H)) <= I(a^2,b^2) <= A^(4/3) S^(2/3)`.
pub fn identric_of_squares_enclosure(a: f64, b: f64) -> Result<Enclosure> {
    check_distinct(a, b)?;
    let (am, hm) = (arithmetic(a, b), harmonic(a, b));
    let log_upper = 4.0 / 3.0 * am.ln() + 2.0 / 3.0 * gini(a, b).ln();
    let gap = a_minus_h(a, b);
    let shrink = 4.0 / 81.0 * gap * gap / (am * hm);
    Ok(Enclosure::new((log_upper - shrink).exp(), log_upper.exp()))
}
