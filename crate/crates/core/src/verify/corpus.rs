use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::Expression;
use crate::interval::Interval;

/// Subintervals are drawn from `(CORPUS_LO, CORPUS_HI)`.
pub const CORPUS_LO: f64 = 0.1;
pub const CORPUS_HI: f64 = 5.0;
/// Narrowest subinterval in the corpus.
pub const MIN_WIDTH: f64 = 0.01;

/// A convex integrand on a subinterval of `(0.1, 5)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub f: Expression,
    pub iv: Interval,
}

fn integrand(kind: u32, rng: &mut ChaCha8Rng) -> Expression {
    let x = Expression::var;
    match kind {
        0 => x().call(crate::expr::Func::Exp),
        1 => Expression::constant(1.0) / x(),
        2 => -x().call(crate::expr::Func::Log),
        3 => x() * x().call(crate::expr::Func::Log),
        _ => x().powf(rng.gen_range(1.2..6.0)),
    }
}

/// `n` seeded cases over `{e^t, 1/t, -log t, t log t, t^p (p in [1.2, 6])}`,
/// cycling through the five kinds.
pub fn corpus(n: usize, seed: u64) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let f = integrand((i % 5) as u32, &mut rng);
            let a = rng.gen_range(CORPUS_LO..CORPUS_HI - MIN_WIDTH);
            let b = rng.gen_range(a + MIN_WIDTH..CORPUS_HI);
            Case { f, iv: Interval::new(a, b).expect("a < b by construction") }
        })
        .collect()
}

/// `n` seeded distinct positive pairs `(a, b)` with `a, b` in `(0.1, 5)`.
pub fn positive_pairs(n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (a, b) = (rng.gen_range(CORPUS_LO..CORPUS_HI), rng.gen_range(CORPUS_LO..CORPUS_HI));
        if a != b {
            out.push((a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_in_range() {
        let c = corpus(50, 9);
        assert_eq!(c, corpus(50, 9));
        assert_ne!(c, corpus(50, 10));
        for case in &c {
            assert!(case.iv.a() > CORPUS_LO && case.iv.b() < CORPUS_HI);
            assert!(case.iv.width() >= MIN_WIDTH);
        }
        assert!(positive_pairs(100, 2).iter().all(|&(a, b)| a > 0.0 && b > 0.0 && a != b));
    }
}
