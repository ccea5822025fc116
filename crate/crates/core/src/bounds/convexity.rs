use crate::error::{DomainError, Error, Result};
use crate::expr::Expression;
use crate::interval::Interval;

/// Minimum sample count accepted by [`convexity_profile`].
pub const MIN_SAMPLES: usize = 33;

/// Sampled verdict on the convexity of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convexity {
    Yes,
    No,
    Indeterminate,
}

/// Sampled shape of `f''`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    Convex,
    Concave,
    Indeterminate,
}

impl Curvature {
    pub fn is_determinate(self) -> bool {
        self != Curvature::Indeterminate
    }
}

/// Sign classification of `f''` and `f''''` on Chebyshev nodes.
///
/// This is evidence, not proof: a sign change between nodes goes unseen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityProfile {
    pub f_convex: Convexity,
    pub f2_shape: Curvature,
    pub min_f2: f64,
    pub max_f2: f64,
    pub min_f4: f64,
    pub max_f4: f64,
    pub samples: usize,
}

impl ConvexityProfile {
    pub fn is_convex(&self) -> bool {
        self.f_convex == Convexity::Yes
    }

    pub(crate) fn require_shape(&self) -> Result<Curvature> {
        match self.f2_shape {
            Curvature::Indeterminate => Err(Error::Hypothesis("shape of f'' is indeterminate")),
            shape => Ok(shape),
        }
    }
}

/// Interior Chebyshev nodes of the first kind, ascending.
pub fn chebyshev_nodes(iv: Interval, n: usize) -> Vec<f64> {
    let (c, r) = (iv.mid(), 0.5 * iv.width());
    (0..n)
        .rev()
        .map(|k| {
            let theta = std::f64::consts::PI * (2 * k + 1) as f64 / (2 * n) as f64;
            c + r * theta.cos()
        })
        .collect()
}

/// Chebyshev-Lobatto nodes (extrema, endpoints included), ascending.
pub fn lobatto_nodes(iv: Interval, n: usize) -> Vec<f64> {
    let (c, r) = (iv.mid(), 0.5 * iv.width());
    let mut nodes: Vec<f64> = (0..n)
        .rev()
        .map(|k| c + r * (std::f64::consts::PI * k as f64 / (n - 1) as f64).cos())
        .collect();
    nodes[0] = iv.a();
    nodes[n - 1] = iv.b();
    nodes
}

fn scaled_tol(values: &[f64]) -> f64 {
    1e-10 * (1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}

/// Classify `f` and `f''` from jets sampled at `n` Chebyshev nodes.
pub fn convexity_profile(f: &Expression, iv: Interval, n: usize) -> Result<ConvexityProfile> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    let mut f2 = Vec::with_capacity(n);
    let mut f4 = Vec::with_capacity(n);
    for x in chebyshev_nodes(iv, n) {
        let j = f.jet(x)?;
        if !j.is_finite() {
            return Err(Error::Domain { x, source: DomainError::NonFinite });
        }
        f2.push(j.second());
        f4.push(j.fourth());
    }
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (min_f2, max_f2, min_f4, max_f4) = (min(&f2), max(&f2), min(&f4), max(&f4));

    let tol2 = scaled_tol(&f2);
    let f_convex = if min_f2 >= -tol2 {
        Convexity::Yes
    } else if max_f2 <= tol2 {
        Convexity::No
    } else {
        Convexity::Indeterminate
    };

    // f'''' ~ 0 everywhere (f'' affine) satisfies both; report it as convex.
    let tol4 = scaled_tol(&f4);
    let f2_shape = if min_f4 >= -tol4 {
        Curvature::Convex
    } else if max_f4 <= tol4 {
        Curvature::Concave
    } else {
        Curvature::Indeterminate
    };

    Ok(ConvexityProfile { f_convex, f2_shape, min_f2, max_f2, min_f4, max_f4, samples: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn profile(src: &str, a: f64, b: f64) -> ConvexityProfile {
        convexity_profile(&parse(src).unwrap(), Interval::new(a, b).unwrap(), 65).unwrap()
    }

    #[test]
    fn exp_is_convex_with_convex_second_derivative() {
        let p = profile("exp(x)", 0.0, 1.0);
        assert_eq!((p.f_convex, p.f2_shape), (Convexity::Yes, Curvature::Convex));
    }

    #[test]
    fn power_two_and_a_half() {
        let p = profile("x^2.5", 0.01, 1.0);
        assert_eq!((p.f_convex, p.f2_shape), (Convexity::Yes, Curvature::Concave));
    }

    #[test]
    fn sine_is_not_convex() {
        assert_eq!(profile("sin(x)", 0.0, 3.0).f_convex, Convexity::No);
        assert_eq!(profile("sin(x)", -1.0, 1.0).f_convex, Convexity::Indeterminate);
    }

    #[test]
    fn cubic_second_derivative_is_affine() {
        let p = profile("x^3", 0.0, 1.0);
        assert_eq!(p.f2_shape, Curvature::Convex);
    }

    #[test]
    fn too_few_samples() {
        let r = convexity_profile(&parse("x").unwrap(), Interval::unit(), 8);
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn node_layout() {
        let iv = Interval::new(-1.0, 3.0).unwrap();
        let n = chebyshev_nodes(iv, 33);
        assert!(n.windows(2).all(|w| w[0] < w[1]));
        assert!(n[0] > -1.0 && n[32] < 3.0);
        let l = lobatto_nodes(iv, 33);
        assert_eq!((l[0], l[32]), (-1.0, 3.0));
        assert!(l.windows(2).all(|w| w[0] < w[1]));
    }
}
