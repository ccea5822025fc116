//! Certified two-sided enclosures for the mean value of convex integrands,
//! built on weighted endpoint/midpoint refinements of the Hermite-Hadamard
//! inequality, together with the elementary means they imply and a small
//! search toolkit for the best endpoint weight.

pub mod bounds;
pub mod error;
pub mod expr;
pub mod interval;
pub mod means;
pub mod oracle;
pub mod search;
pub mod verify;

pub use bounds::{ConvexityProfile, DefectSandwich, Enclosure, Interval, WeightPair};
pub use error::{DomainError, Error, ParseError, Result};
pub use expr::{parse, Expression, Func, Jet4};
pub use means::{IdentricExponent, MeanSet};
pub use oracle::{integrate_mean, QuadResult};
pub use search::{Family, RatioReport, SearchResult};
pub use verify::{Suite, VerifyOptions, VerifyReport};
