//! Derivative-free maximization of `F` over a [`Family`]: a seeded, jittered
//! grid evaluated in parallel, then cyclic coordinate golden-section
//! refinement around the incumbent with a halving bracket.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{f_ratio, Family};
use crate::bounds::convexity_profile;
use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::interval::Interval;

/// Chebyshev samples in the feasibility check; the final witness is
/// re-checked at four times this count.
pub const PROFILE_SAMPLES: usize = 65;

pub const MIN_BUDGET: usize = 100;

const GOLDEN_ITERS: usize = 16;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// One evaluated parameter vector. `ratio` is `None` when the candidate is
/// not certified convex or its ratio is degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub params: Vec<f64>,
    pub ratio: Option<f64>,
}

impl Candidate {
    /// Higher ratio first; among equal ratios the lexicographically
    /// smaller parameter vector wins.
    fn rank(&self, other: &Candidate) -> Ordering {
        let key = |c: &Candidate| c.ratio.unwrap_or(f64::NEG_INFINITY);
        key(self).total_cmp(&key(other)).then_with(|| lexicographic(&other.params, &self.params))
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub family: Family,
    pub params: Vec<f64>,
}

impl Witness {
    pub fn named(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        self.family.param_names().iter().copied().zip(self.params.iter().copied())
    }

    pub fn expression(&self) -> Result<Expression> {
        self.family.expression(&self.params)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_ratio: f64,
    pub witness: Witness,
    /// Candidates evaluated, feasible or not.
    pub evaluations: usize,
    pub seed: u64,
}

/// Sampled convexity on the closed interval: the profile must say convex and
/// `f''` at both endpoints must not be negative beyond the profile's
/// tolerance (`+inf` is accepted).
fn certified_convex(f: &Expression, iv: Interval, samples: usize) -> bool {
    let Ok(p) = convexity_profile(f, iv, samples) else {
        return false;
    };
    if !p.is_convex() {
        return false;
    }
    let tol = 1e-10 * (1.0 + p.min_f2.abs().max(p.max_f2.abs()));
    [iv.a(), iv.b()].into_iter().all(|x| f.jet_unchecked(x).second() >= -tol)
}

fn evaluate_with(family: Family, params: Vec<f64>, samples: usize) -> Candidate {
    let ratio = family.expression(&params).ok().and_then(|f| {
        let iv = Interval::unit();
        if !certified_convex(&f, iv, samples) {
            return None;
        }
        f_ratio(&f, iv).ok()?.value
    });
    Candidate { params, ratio }
}

/// `F` on `[0, 1]` for one member of `family`, or `None` if it is not
/// certified convex.
pub fn evaluate_candidate(family: Family, params: &[f64]) -> Result<Candidate> {
    family.expression(params)?;
    Ok(evaluate_with(family, params.to_vec(), PROFILE_SAMPLES))
}

struct Search {
    family: Family,
    budget: usize,
    /// Every evaluation with its search coordinates, in evaluation order.
    log: Vec<(Vec<f64>, Candidate)>,
    best: usize,
}

impl Search {
    fn probe(&mut self, coords: Vec<f64>) -> Option<f64> {
        if self.log.len() >= self.budget {
            return None;
        }
        let c = evaluate_with(self.family, self.family.params_of(&coords), PROFILE_SAMPLES);
        let value = c.ratio.unwrap_or(f64::NEG_INFINITY);
        if c.rank(&self.log[self.best].1).is_gt() {
            self.best = self.log.len();
        }
        self.log.push((coords, c));
        Some(value)
    }

    /// Golden-section maximization along coordinate `k` through `base`;
    /// `None` once the budget runs out.
    fn golden(&mut self, base: &[f64], k: usize, lo: f64, hi: f64) -> Option<()> {
        let at = |s: &mut Search, t: f64| {
            let mut c = base.to_vec();
            c[k] = t;
            s.probe(c)
        };
        let (mut a, mut b) = (lo, hi);
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = at(self, c)?;
        let mut fd = at(self, d)?;
        for _ in 0..GOLDEN_ITERS {
            // ties move left, toward smaller parameters
            if fc >= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = at(self, c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = at(self, d)?;
            }
        }
        Some(())
    }
}

fn jittered_grid(family: Family, budget: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let bx = family.search_box();
    let d = bx.len();
    let per_dim = ((budget / 2) as f64).powf(1.0 / d as f64).floor().max(2.0) as usize;
    let steps: Vec<f64> = bx.iter().map(|(lo, hi)| (hi - lo) / per_dim as f64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = per_dim.pow(d as u32);
    let points = (0..total)
        .map(|idx| {
            let mut rest = idx;
            (0..d)
                .map(|k| {
                    let i = rest % per_dim;
                    rest /= per_dim;
                    let jitter: f64 = rng.gen_range(-0.25..0.25);
                    bx[k].0 + (i as f64 + 0.5 + jitter) * steps[k]
                })
                .collect()
        })
        .collect();
    (points, steps)
}

/// Maximize `F_f(0, 1)` over `family` using at most `budget` candidate
/// evaluations. Identical `(family, budget, seed)` give identical results.
pub fn alpha_star_search(family: Family, budget: usize, seed: u64) -> Result<SearchResult> {
    if budget < MIN_BUDGET {
        return Err(Error::InvalidArgument(format!("budget {budget} is below {MIN_BUDGET}")));
    }
    let bx = family.search_box();
    let (points, steps) = jittered_grid(family, budget, seed);
    let evaluated: Vec<Candidate> =
        points.par_iter().map(|c| evaluate_with(family, family.params_of(c), PROFILE_SAMPLES)).collect();
    let log: Vec<(Vec<f64>, Candidate)> = points.into_iter().zip(evaluated).collect();
    let best = (0..log.len()).max_by(|&i, &j| log[i].1.rank(&log[j].1)).expect("grid is never empty");
    if log[best].1.ratio.is_none() {
        return Err(Error::NoFeasibleCandidate);
    }

    let mut search = Search { family, budget, log, best };
    let mut half = steps;
    let floor: Vec<f64> = bx.iter().map(|(lo, hi)| 1e-10 * (hi - lo)).collect();
    'rounds: loop {
        for k in 0..bx.len() {
            let x = search.log[search.best].0.clone();
            let (lo, hi) = ((x[k] - half[k]).max(bx[k].0), (x[k] + half[k]).min(bx[k].1));
            if search.golden(&x, k, lo, hi).is_none() {
                break 'rounds;
            }
        }
        half.iter_mut().for_each(|h| *h *= 0.5);
        if half.iter().zip(&floor).all(|(h, f)| h < f) {
            break;
        }
    }

    let evaluations = search.log.len();
    let mut feasible: Vec<&Candidate> = search.log.iter().map(|(_, c)| c).filter(|c| c.ratio.is_some()).collect();
    feasible.sort_by(|x, y| y.rank(x));
    // The incumbent must survive a denser convexity check; otherwise fall
    // back to the next best.
    for c in feasible {
        let check = evaluate_with(family, c.params.clone(), 4 * PROFILE_SAMPLES);
        if let Some(r) = check.ratio {
            return Ok(SearchResult { best_ratio: r, witness: Witness { family, params: check.params }, evaluations, seed });
        }
    }
    Err(Error::NoFeasibleCandidate)
}
