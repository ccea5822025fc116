//! Weighted endpoint/midpoint bounds on the mean value of an integrand.
//!
//! For weights with `2*endpoint + midpoint = 1` the combination
//!
//! ```text
//! N(alpha, beta) = alpha * (f(a) + f(b)) + beta * f((a+b)/2)
//! ```
//!
//! interpolates between the midpoint value `N(0, 1)` and the trapezoid value
//! `N(1/2, 0)`. For convex `f`, `N(1/4, 1/2)` is already an upper bound on
//! the mean; with information on the shape of `f''` the gap to the mean
//! (the *defect*) can be sandwiched in terms of `f''` at the three nodes.

mod adaptive;
mod convexity;
mod identity;

pub use adaptive::{adaptive_enclosure, bisection_enclosure, AdaptiveEnclosure, MAX_LEAVES};
pub use convexity::{
    chebyshev_nodes, convexity_profile, lobatto_nodes, Convexity, ConvexityProfile, Curvature,
    MIN_SAMPLES,
};
pub use identity::{
    quarter_kernel_identity, simpson_kernel_identity, symmetric_pair_triple, IdentityCheck,
    IDENTITY_TOL, ROUNDING_ULPS,
};

pub use crate::interval::{Enclosure, Interval};

use crate::error::{Error, Result};
use crate::expr::Expression;

const WEIGHT_TOL: f64 = 1e-12;

/// Endpoint and midpoint weights of `N(alpha, beta)` / `M(gamma, delta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightPair {
    endpoint: f64,
    midpoint: f64,
}

impl WeightPair {
    pub const MIDPOINT: WeightPair = WeightPair { endpoint: 0.0, midpoint: 1.0 };
    pub const QUARTER: WeightPair = WeightPair { endpoint: 0.25, midpoint: 0.5 };
    pub const SIMPSON: WeightPair = WeightPair { endpoint: 1.0 / 6.0, midpoint: 2.0 / 3.0 };
    pub const TRAPEZOID: WeightPair = WeightPair { endpoint: 0.5, midpoint: 0.0 };

    /// Negative weights are accepted so that counterexample probes can be
    /// expressed; only the normalization is enforced.
    pub fn new(endpoint: f64, midpoint: f64) -> Result<Self> {
        if endpoint.is_finite()
            && midpoint.is_finite()
            && (2.0 * endpoint + midpoint - 1.0).abs() <= WEIGHT_TOL
        {
            Ok(WeightPair { endpoint, midpoint })
        } else {
            Err(Error::InvalidWeights { endpoint, midpoint })
        }
    }

    /// `(alpha, 1 - 2 alpha)`.
    pub fn from_endpoint(endpoint: f64) -> Result<Self> {
        WeightPair::new(endpoint, 1.0 - 2.0 * endpoint)
    }

    pub fn endpoint(&self) -> f64 {
        self.endpoint
    }

    pub fn midpoint(&self) -> f64 {
        self.midpoint
    }

    /// Whether `N` with these weights is a guaranteed upper bound for every
    /// convex integrand (`alpha` in `[1/4, 1/2]`).
    pub fn is_certified_upper(&self) -> bool {
        (0.25..=0.5).contains(&self.endpoint)
    }
}

/// `f(a)`, `f(mid)`, `f(b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeValues {
    pub fa: f64,
    pub fm: f64,
    pub fb: f64,
}

impl NodeValues {
    pub fn of(f: &Expression, iv: Interval) -> Result<Self> {
        Ok(NodeValues { fa: f.eval(iv.a())?, fm: f.eval(iv.mid())?, fb: f.eval(iv.b())? })
    }

    pub fn weighted(&self, w: WeightPair) -> f64 {
        w.endpoint * (self.fa + self.fb) + w.midpoint * self.fm
    }

    /// `f(a) + f(b) - 2 f(mid)`, non-negative for convex `f`.
    pub fn second_difference(&self) -> f64 {
        self.fa + self.fb - 2.0 * self.fm
    }
}

/// `f''(a)`, `f''(mid)`, `f''(b)` from jets.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Curvatures {
    a: f64,
    m: f64,
    b: f64,
}

impl Curvatures {
    fn of(f: &Expression, iv: Interval) -> Result<Self> {
        Ok(Curvatures { a: second_at(f, iv.a())?, m: second_at(f, iv.mid())?, b: second_at(f, iv.b())? })
    }
}

/// `f''(x)`, which must be finite.
pub(crate) fn second_at(f: &Expression, x: f64) -> Result<f64> {
    let v = f.jet(x)?.second();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain { x, source: crate::error::DomainError::NonFinite })
    }
}

/// The classic two-sided bound `(f(mid), (f(a)+f(b))/2)`.
///
/// Valid for convex `f`; convexity is not checked here (pair it with
/// [`convexity_profile`]).
pub fn hermite_hadamard(f: &Expression, iv: Interval) -> Result<Enclosure> {
    let v = NodeValues::of(f, iv)?;
    Ok(Enclosure::new(v.fm, 0.5 * (v.fa + v.fb)))
}

/// `N(alpha, beta) = alpha (f(a) + f(b)) + beta f(mid)`.
pub fn n_value(f: &Expression, iv: Interval, w: WeightPair) -> Result<f64> {
    Ok(NodeValues::of(f, iv)?.weighted(w))
}

/// `M(gamma, delta)`; the same combination, used as a lower bound.
pub fn m_value(f: &Expression, iv: Interval, w: WeightPair) -> Result<f64> {
    n_value(f, iv, w)
}

/// `N(1/4, 1/2)`: the trapezoid rule applied to both halves of `[a, b]`.
/// An upper bound on the mean for any convex `f`, and never above the
/// trapezoid value.
pub fn quarter_upper(f: &Expression, iv: Interval) -> Result<f64> {
    n_value(f, iv, WeightPair::QUARTER)
}

/// Which difference a defect enclosure brackets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `bound - mean`
    BoundMinusMean,
    /// `mean - bound`
    MeanMinusBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectSandwich {
    /// The weighted-node value the defect is measured from.
    pub bound: f64,
    pub orientation: Orientation,
    pub defect: Enclosure,
}

impl DefectSandwich {
    /// Enclosure of the mean implied by the defect enclosure.
    pub fn mean_enclosure(&self) -> Enclosure {
        match self.orientation {
            Orientation::BoundMinusMean => self.defect.reflect(self.bound),
            Orientation::MeanMinusBound => {
                Enclosure::new(self.bound + self.defect.lower, self.bound + self.defect.upper)
            }
        }
    }

    /// The defect as this sandwich defines it, given a mean value.
    pub fn defect_of(&self, mean: f64) -> f64 {
        match self.orientation {
            Orientation::BoundMinusMean => self.bound - mean,
            Orientation::MeanMinusBound => mean - self.bound,
        }
    }
}

/// Sandwich on `N(1/4, 1/2) - mean` from `f''` at the nodes.
///
/// With `w = b - a`: if `f''` is convex the defect lies in
/// `[w^2/48 f''(mid), w^2/96 (f''(a) + f''(b))]`; if concave the two ends
/// trade places.
pub fn quarter_defect_sandwich(
    f: &Expression,
    iv: Interval,
    prof: &ConvexityProfile,
) -> Result<DefectSandwich> {
    let shape = prof.require_shape()?;
    let bound = quarter_upper(f, iv)?;
    let d2 = Curvatures::of(f, iv)?;
    let w2 = iv.width() * iv.width();
    let mid_term = w2 / 48.0 * d2.m;
    let end_term = w2 / 96.0 * (d2.a + d2.b);
    let defect = match shape {
        Curvature::Concave => Enclosure::new(end_term, mid_term),
        _ => Enclosure::new(mid_term, end_term),
    };
    Ok(DefectSandwich { bound, orientation: Orientation::BoundMinusMean, defect })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneSidedBound {
    pub value: f64,
    pub side: Side,
}

impl OneSidedBound {
    pub fn holds_for(&self, x: f64, slack: f64) -> bool {
        match self.side {
            Side::Upper => x <= self.value + slack,
            Side::Lower => x >= self.value - slack,
        }
    }
}

/// `N(1/6, 2/3)` (Simpson's value) bounds the mean from above when `f''` is
/// convex and from below when `f''` is concave.
pub fn simpson_one_sided(
    f: &Expression,
    iv: Interval,
    prof: &ConvexityProfile,
) -> Result<OneSidedBound> {
    let side = match prof.require_shape()? {
        Curvature::Concave => Side::Lower,
        _ => Side::Upper,
    };
    Ok(OneSidedBound { value: n_value(f, iv, WeightPair::SIMPSON)?, side })
}

/// Sandwich on the Simpson defect.
///
/// `f''` convex: `N(1/6,2/3) - mean` lies in `[0, w^2/324 (f''(a)+f''(b)-2f''(mid))]`.
/// `f''` concave: `mean - N(1/6,2/3)` lies in `[0, w^2/324 (2f''(mid)-f''(a)-f''(b))]`.
pub fn simpson_defect_sandwich(
    f: &Expression,
    iv: Interval,
    prof: &ConvexityProfile,
) -> Result<DefectSandwich> {
    let shape = prof.require_shape()?;
    let bound = n_value(f, iv, WeightPair::SIMPSON)?;
    let d2 = Curvatures::of(f, iv)?;
    let spread = d2.a + d2.b - 2.0 * d2.m;
    let scale = iv.width() * iv.width() / 324.0;
    let (orientation, upper) = match shape {
        Curvature::Concave => (Orientation::MeanMinusBound, -scale * spread),
        _ => (Orientation::BoundMinusMean, scale * spread),
    };
    Ok(DefectSandwich { bound, orientation, defect: Enclosure::new(0.0, upper) })
}

/// Node samples used for the fourth-derivative maximum in [`simpson_estimate`].
pub const SIMPSON_SAMPLES: usize = 65;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpsonEstimate {
    /// Simpson's value as a mean, i.e. `N(1/6, 2/3)`.
    pub estimate: f64,
    /// `(1/90) h^5 max|f''''| / (b - a)` with `h = (b - a)/2`.
    pub err_bound: f64,
    pub max_abs_f4: f64,
}

impl SimpsonEstimate {
    pub fn enclosure(&self) -> Enclosure {
        Enclosure::new(self.estimate - self.err_bound, self.estimate + self.err_bound)
    }
}

/// Simpson's rule with its classical error term; `max|f''''|` is sampled on
/// Chebyshev-Lobatto nodes, endpoints included.
pub fn simpson_estimate(f: &Expression, iv: Interval) -> Result<SimpsonEstimate> {
    let estimate = n_value(f, iv, WeightPair::SIMPSON)?;
    let mut max_abs_f4 = 0.0f64;
    for x in lobatto_nodes(iv, SIMPSON_SAMPLES) {
        max_abs_f4 = max_abs_f4.max(f.jet(x)?.fourth().abs());
    }
    let h = 0.5 * iv.width();
    let err_bound = h.powi(5) * max_abs_f4 / 90.0 / iv.width();
    Ok(SimpsonEstimate { estimate, err_bound, max_abs_f4 })
}
