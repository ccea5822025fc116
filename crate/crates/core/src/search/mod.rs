//! Numerical probes of the best endpoint weight.
//!
//! For convex `f`, `N(alpha, 1 - 2 alpha)` bounds the mean from above exactly
//! when `alpha >= F_f(a, b)`, where
//!
//! ```text
//! F_f(a, b) = (mean - f(mid)) / (f(a) + f(b) - 2 f(mid)).
//! ```
//!
//! `F` tends to 1/6 as `b -> a` for smooth `f`, never exceeds 1/4 for convex
//! `f`, and its supremum over smooth convex functions is not known. This
//! module evaluates `F`, scans its small-width limit, reproduces the
//! counterexample that rules out a lower bound of the same shape, and
//! maximizes `F` over a few parametric families.

mod family;
mod optimize;

pub use family::Family;
pub use optimize::{alpha_star_search, evaluate_candidate, Candidate, SearchResult, Witness, MIN_BUDGET, PROFILE_SAMPLES};

use crate::bounds::{convexity_profile, m_value, ConvexityProfile, NodeValues, WeightPair};
use crate::error::{Error, Result};
use crate::expr::{parse, Expression};
use crate::interval::Interval;
use crate::oracle::integrate_mean;

/// Relative threshold below which `f(a) + f(b) - 2 f(mid)` counts as zero.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Upper limit of `F` for convex integrands.
pub const RATIO_CAP: f64 = 0.25;

/// A convex function with `F_g(0, 1)` about 0.18128, well above 1/6.
pub const WITNESS_G: &str = "4*x^3.5/35 - x^4/12";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioReport {
    /// `F_f(a, b)`; `None` when the denominator is degenerate.
    pub value: Option<f64>,
    /// Oracle mean minus `f(mid)`.
    pub numerator: f64,
    /// `f(a) + f(b) - 2 f(mid)`.
    pub denominator: f64,
    pub degenerate: bool,
}

/// `F_f` on `iv` with the oracle at tolerance `tol`.
pub fn f_ratio_with_tol(f: &Expression, iv: Interval, tol: f64) -> Result<RatioReport> {
    let v = NodeValues::of(f, iv)?;
    let mean = integrate_mean(f, iv, tol)?.value;
    Ok(ratio_from(v, mean))
}

/// `F_f` on `iv`. The oracle tolerance follows the size of the denominator,
/// so narrow intervals keep their relative accuracy.
pub fn f_ratio(f: &Expression, iv: Interval) -> Result<RatioReport> {
    let v = NodeValues::of(f, iv)?;
    let tol = (1e-10 * v.second_difference().abs()).clamp(1e-13, 1e-10);
    let mean = integrate_mean(f, iv, tol)?.value;
    Ok(ratio_from(v, mean))
}

fn ratio_from(v: NodeValues, mean: f64) -> RatioReport {
    let numerator = mean - v.fm;
    let denominator = v.second_difference();
    let degenerate = denominator.abs() <= DEGENERACY_TOL * (1.0 + v.fa.abs() + v.fb.abs());
    let value = (!degenerate).then(|| numerator / denominator);
    RatioReport { value, numerator, denominator, degenerate }
}

/// `F_f(a, a + h)` for each `h`, in order.
pub fn ratio_limit_scan(f: &Expression, a: f64, hs: &[f64]) -> Result<Vec<(f64, RatioReport)>> {
    hs.iter()
        .map(|&h| {
            if !(h > 0.0) {
                return Err(Error::InvalidArgument(format!("step h = {h} must be positive")));
            }
            Ok((h, f_ratio(f, Interval::new(a, a + h)?)?))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counterexample {
    pub gamma: f64,
    /// `M(gamma, 1 - 2 gamma)` for `t^(1/gamma)` on `[0, 1]`.
    pub m_value: f64,
    /// `gamma / (1 + gamma)`, the mean of `t^(1/gamma)` on `[0, 1]`.
    pub mean: f64,
    /// `M > mean`: the candidate lower bound fails.
    pub violated: bool,
}

/// Shows that no `M(gamma, 1 - 2 gamma)` with `gamma > 0` is a lower bound
/// for every convex function, using `f(t) = t^(1/gamma)` on `[0, 1]`.
pub fn left_counterexample(gamma: f64) -> Result<Counterexample> {
    if !(gamma > 0.0 && gamma <= 0.5) {
        return Err(Error::InvalidArgument(format!("gamma = {gamma} outside (0, 1/2]")));
    }
    let f = Expression::var().powf(1.0 / gamma);
    let m = m_value(&f, Interval::unit(), WeightPair::from_endpoint(gamma)?)?;
    let mean = gamma / (1.0 + gamma);
    Ok(Counterexample { gamma, m_value: m, mean, violated: m > mean })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub ratio: RatioReport,
    pub profile: ConvexityProfile,
}

impl WitnessReport {
    pub fn value(&self) -> f64 {
        self.ratio.value.unwrap_or(f64::NAN)
    }
}

/// `F_g(0, 1)` for [`WITNESS_G`] (oracle at `1e-10`) with its convexity
/// profile on `[0, 1]`.
pub fn witness_g_ratio() -> Result<WitnessReport> {
    let g = parse(WITNESS_G)?;
    let iv = Interval::unit();
    let profile = convexity_profile(&g, iv, 4 * PROFILE_SAMPLES)?;
    Ok(WitnessReport { ratio: f_ratio_with_tol(&g, iv, 1e-10)?, profile })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(src: &str, a: f64, b: f64) -> RatioReport {
        f_ratio(&parse(src).unwrap(), Interval::new(a, b).unwrap()).unwrap()
    }

    #[test]
    fn exp_and_square() {
        let e = std::f64::consts::E;
        let expected = (e - 1.0 - e.sqrt()) / (1.0 + e - 2.0 * e.sqrt());
        assert!((ratio("exp(x)", 0.0, 1.0).value.unwrap() - expected).abs() < 1e-9);
        assert!((expected - 0.165290076040833).abs() < 1e-15);
        assert!((ratio("x^2", 0.0, 1.0).value.unwrap() - 1.0 / 6.0).abs() < 1e-12);
        assert!((ratio("3*x^2 - x + 2", -4.0, 7.5).value.unwrap() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn affine_is_degenerate() {
        let r = ratio("x", 0.0, 1.0);
        assert!(r.degenerate);
        assert_eq!(r.value, None);
        assert!(ratio("2 - 5*x", 1.0, 3.0).degenerate);
    }

    #[test]
    fn limit_scan_for_exp() {
        let f = parse("exp(x)").unwrap();
        let scan = ratio_limit_scan(&f, 0.0, &[1.0, 0.1, 0.01]).unwrap();
        let v: Vec<f64> = scan.iter().map(|(_, r)| r.value.unwrap()).collect();
        assert!((v[1] - 0.166652779017754).abs() < 1e-9, "{}", v[1]);
        assert!((v[2] - 1.0 / 6.0).abs() < 2e-6);
        assert!(ratio_limit_scan(&f, 0.0, &[0.0]).is_err());
    }

    #[test]
    fn counterexample_values() {
        let c = left_counterexample(0.5).unwrap();
        assert_eq!((c.m_value, c.violated), (0.5, true));
        assert!((c.mean - 1.0 / 3.0).abs() < 1e-16);
        let c = left_counterexample(0.25).unwrap();
        assert!((c.m_value - 0.28125).abs() < 1e-15 && (c.mean - 0.2).abs() < 1e-15);
        assert!(left_counterexample(0.49).unwrap().violated);
        assert!(left_counterexample(0.0).is_err());
        assert!(left_counterexample(0.51).is_err());
    }

    #[test]
    fn witness_g() {
        let w = witness_g_ratio().unwrap();
        assert!((w.value() - 0.18128).abs() < 5e-5, "{}", w.value());
        assert!(w.profile.is_convex());
        let g = parse(WITNESS_G).unwrap();
        assert!((g.eval(0.5).unwrap() - 0.0048932).abs() < 5e-8);
        assert!((g.eval(1.0).unwrap() - 0.0309524).abs() < 5e-8);
        assert!((g.jet(0.5).unwrap().second() - (0.5f64.powf(1.5) - 0.25)).abs() < 1e-14);
    }
}
