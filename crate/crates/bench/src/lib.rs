//! Shared fixtures for the criterion benches.

use hhbound::{parse, Expression};

/// Integrands exercised by the benches, as `(label, source)` pairs.
pub const INTEGRANDS: &[(&str, &str)] = &[
    ("exp", "exp(x)"),
    ("recip", "1/x"),
    ("xlogx", "x*log(x)"),
    ("witness", "4*x^3.5/35 - x^4/12"),
];

pub fn integrands() -> Vec<(&'static str, Expression)> {
    INTEGRANDS
        .iter()
        .map(|(name, src)| (*name, parse(src).expect("fixture parses")))
        .collect()
}
