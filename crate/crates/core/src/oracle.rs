//! Reference integrator for mean values.
//!
//! Adaptive bisection with a Richardson-extrapolated Simpson pair on each
//! panel: the 3-point and composite 5-point Simpson sums differ by roughly
//! 15x the error of the finer one, which gives both the per-panel error
//! estimate and a sixth-order corrected value. Panels are consumed strictly
//! left to right, so results are bit-for-bit reproducible.
//!
//! This module deliberately shares no code with [`crate::bounds`].

use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::interval::Interval;

/// Default evaluation budget.
pub const DEFAULT_MAX_EVALS: usize = 1_000_000;

/// Panels the domain is split into before adaptation starts.
pub const INITIAL_PANELS: usize = 4;

const MIN_TOL: f64 = 1e-13;
const MAX_TOL: f64 = 1e-3;
const MAX_DEPTH: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    /// `(1/(b-a)) * integral of f over [a, b]`.
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub tol: f64,
    pub max_evals: usize,
}

impl Integrator {
    pub fn new(tol: f64) -> Result<Self> {
        if !(MIN_TOL..=MAX_TOL).contains(&tol) {
            return Err(Error::Tolerance(tol));
        }
        Ok(Integrator { tol, max_evals: DEFAULT_MAX_EVALS })
    }

    pub fn with_max_evals(mut self, max_evals: usize) -> Self {
        self.max_evals = max_evals;
        self
    }

    /// Mean value of an arbitrary fallible integrand.
    pub fn mean_of<F>(&self, iv: Interval, mut f: F) -> Result<QuadResult>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let max_evals = self.max_evals;
        let mut evaluations = 0usize;
        let mut eval = |x: f64| -> Result<f64> {
            evaluations += 1;
            if evaluations > max_evals {
                return Err(Error::BudgetExceeded(max_evals));
            }
            f(x)
        };

        let (a, b) = (iv.a(), iv.b());
        let n = INITIAL_PANELS;
        let h = (b - a) / n as f64;
        let node = |i: usize| if i == 2 * n { b } else { a + 0.5 * h * i as f64 };
        let mut samples = Vec::with_capacity(2 * n + 1);
        for i in 0..=2 * n {
            samples.push(eval(node(i))?);
        }

        // Stack of pending panels; the leftmost one is always on top.
        let mut stack: Vec<Panel> = (0..n)
            .rev()
            .map(|i| Panel::new(node(2 * i), node(2 * i + 2), samples[2 * i], samples[2 * i + 1], samples[2 * i + 2], 0))
            .collect();

        let mut total = 0.0;
        let mut err_total = 0.0;
        while let Some(p) = stack.pop() {
            let (lm, rm) = (0.5 * (p.l + p.m), 0.5 * (p.m + p.r));
            let flm = eval(lm)?;
            let frm = eval(rm)?;
            let left = Panel::new(p.l, p.m, p.fl, flm, p.fm, p.depth + 1);
            let right = Panel::new(p.m, p.r, p.fm, frm, p.fr, p.depth + 1);
            let fine = left.simpson + right.simpson;
            let err = (fine - p.simpson).abs() / 15.0;

            let width = p.r - p.l;
            let magnitude = width
                * [p.fl, flm, p.fm, frm, p.fr].iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let converged = err <= self.tol * width
                || err <= 32.0 * f64::EPSILON * magnitude
                || p.depth >= MAX_DEPTH
                || width <= 4.0 * f64::EPSILON * (p.l.abs() + p.r.abs());
            if converged {
                total += fine + (fine - p.simpson) / 15.0;
                err_total += err;
            } else {
                stack.push(right);
                stack.push(left);
            }
        }
        let w = b - a;
        Ok(QuadResult { value: total / w, err_estimate: err_total / w, evaluations })
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    l: f64,
    m: f64,
    r: f64,
    fl: f64,
    fm: f64,
    fr: f64,
    simpson: f64,
    depth: u32,
}

impl Panel {
    fn new(l: f64, r: f64, fl: f64, fm: f64, fr: f64, depth: u32) -> Self {
        let m = 0.5 * (l + r);
        let simpson = (r - l) / 6.0 * (fl + 4.0 * fm + fr);
        Panel { l, m, r, fl, fm, fr, simpson, depth }
    }
}

/// Mean value of `f` over `iv` to absolute accuracy `tol`.
pub fn integrate_mean(f: &Expression, iv: Interval, tol: f64) -> Result<QuadResult> {
    Integrator::new(tol)?.mean_of(iv, |x| f.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn mean(src: &str, a: f64, b: f64) -> QuadResult {
        integrate_mean(&parse(src).unwrap(), Interval::new(a, b).unwrap(), 1e-10).unwrap()
    }

    #[test]
    fn cubic_is_exact() {
        let r = mean("x^3", 0.0, 1.0);
        assert!((r.value - 0.25).abs() < 1e-16, "{}", r.value);
        assert!(r.evaluations >= 2 * INITIAL_PANELS + 1);
    }

    #[test]
    fn exp_and_reciprocal() {
        assert!((mean("exp(x)", 0.0, 1.0).value - (std::f64::consts::E - 1.0)).abs() < 1e-10);
        assert!((mean("1/x", 1.0, 2.0).value - std::f64::consts::LN_2).abs() < 1e-10);
    }

    #[test]
    fn tolerance_range() {
        let f = parse("x").unwrap();
        let iv = Interval::unit();
        assert!(matches!(integrate_mean(&f, iv, 1e-14), Err(Error::Tolerance(_))));
        assert!(matches!(integrate_mean(&f, iv, 1e-2), Err(Error::Tolerance(_))));
    }

    #[test]
    fn endpoint_singularity_rejected() {
        let f = parse("log(x)").unwrap();
        assert!(matches!(integrate_mean(&f, Interval::unit(), 1e-8), Err(Error::Domain { .. })));
    }

    #[test]
    fn budget_is_enforced() {
        let f = parse("hyp(x - 0.5, 0.0001)").unwrap();
        let r = Integrator::new(1e-13).unwrap().with_max_evals(100).mean_of(Interval::unit(), |x| f.eval(x));
        assert!(matches!(r, Err(Error::BudgetExceeded(100))));
    }

    #[test]
    fn deterministic() {
        let a = mean("sin(x)*exp(x)", 0.0, 3.0);
        let b = mean("sin(x)*exp(x)", 0.0, 3.0);
        assert_eq!(a, b);
    }
}
