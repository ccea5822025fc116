//! Seeded property suites: every bound, sandwich and identity in the crate
//! checked against the reference integrator (or directly computed means) on
//! randomly drawn cases.

mod corpus;

pub use corpus::{corpus, positive_pairs, Case, CORPUS_HI, CORPUS_LO, MIN_WIDTH};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::{
    convexity_profile, hermite_hadamard, quarter_defect_sandwich, quarter_kernel_identity,
    quarter_upper, simpson_defect_sandwich, simpson_estimate, simpson_kernel_identity,
    simpson_one_sided, symmetric_pair_triple, ConvexityProfile, DefectSandwich,
};
use crate::error::{Error, Result};
use crate::means::{
    all_means, identric, identric_enclosure, identric_of_squares_enclosure, logarithmic,
    log_mean_enclosure, recip_log_mean_defect, recip_log_mean_enclosure, IdentricExponent,
};
use crate::oracle::integrate_mean;

/// Oracle tolerance for the mean in the inequality suite.
pub const ORACLE_TOL: f64 = 1e-12;
/// Slack on the containment of the oracle mean.
pub const MEAN_SLACK: f64 = 1e-10;
/// Slack on the containment of the oracle defect.
pub const DEFECT_SLACK: f64 = 1e-9;
/// Relative residual allowed in the kernel identities.
pub const IDENTITY_REL: f64 = 1e-8;
/// Relative slack for the mean chain and mean enclosures.
pub const MEANS_REL: f64 = 1e-12;

const PAIR_PARAMS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Inequalities,
    Means,
    All,
}

impl Suite {
    pub fn id(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Inequalities => "inequalities",
            Suite::Means => "means",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::Identities, Suite::Inequalities, Suite::Means, Suite::All]
            .into_iter()
            .find(|suite| suite.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub samples: usize,
    pub seed: u64,
    pub identric: IdentricExponent,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { suite: Suite::All, samples: 200, seed: 1, identric: IdentricExponent::Derived }
    }
}

/// Result of one check on one case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Pass,
    /// By how much the inequality was violated (infinite for errors).
    Fail(f64),
    /// The hypothesis of the property did not hold for this case.
    Skip,
}

impl Outcome {
    fn check(excess: f64) -> Outcome {
        if excess <= 0.0 {
            Outcome::Pass
        } else {
            Outcome::Fail(excess)
        }
    }

    fn from_result(r: Result<Outcome>) -> Outcome {
        r.unwrap_or(Outcome::Fail(f64::INFINITY))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Largest violation seen; 0 when nothing failed.
    pub worst_excess: f64,
}

impl PropertyReport {
    fn tally(name: &'static str, outcomes: impl IntoIterator<Item = Outcome>) -> Self {
        let mut r = PropertyReport { name, passed: 0, failed: 0, skipped: 0, worst_excess: 0.0 };
        for o in outcomes {
            match o {
                Outcome::Pass => r.passed += 1,
                Outcome::Skip => r.skipped += 1,
                Outcome::Fail(e) => {
                    r.failed += 1;
                    r.worst_excess = r.worst_excess.max(e);
                }
            }
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub options: VerifyOptions,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }

    pub fn failures(&self) -> usize {
        self.properties.iter().map(|p| p.failed).sum()
    }
}

type Check<T> = (&'static str, fn(&T) -> Result<Outcome>);

/// Evaluate each check on every case (cases in parallel) and tally per check.
fn run_checks<T: Sync>(cases: &[T], checks: &[Check<T>]) -> Vec<PropertyReport> {
    let grid: Vec<Vec<Outcome>> = cases
        .par_iter()
        .map(|c| checks.iter().map(|(_, check)| Outcome::from_result(check(c))).collect())
        .collect();
    checks
        .iter()
        .enumerate()
        .map(|(k, (name, _))| PropertyReport::tally(name, grid.iter().map(|row| row[k])))
        .collect()
}

fn identity_checks() -> Vec<Check<Case>> {
    vec![
        ("quarter-kernel-identity", |c| {
            let chk = quarter_kernel_identity(&c.f, c.iv)?;
            Ok(Outcome::check(if chk.within(IDENTITY_REL) { 0.0 } else { chk.relative_residual() }))
        }),
        ("simpson-kernel-identity", |c| {
            let chk = simpson_kernel_identity(&c.f, c.iv)?;
            Ok(Outcome::check(if chk.within(IDENTITY_REL) { 0.0 } else { chk.relative_residual() }))
        }),
        ("symmetric-pair-monotone", |c| {
            let mut excess = 0.0f64;
            for t in PAIR_PARAMS {
                let [m, pair, ends] = symmetric_pair_triple(&c.f, c.iv, t)?;
                let slack = 1e-12 * (1.0 + ends.abs());
                excess = excess.max(m - pair - slack).max(pair - ends - slack);
            }
            Ok(Outcome::check(excess))
        }),
    ]
}

/// Per-case data shared by the inequality checks.
struct Prepared {
    case: Case,
    mean: f64,
    profile: ConvexityProfile,
}

fn sandwich_outcome(s: Result<DefectSandwich>, mean: f64) -> Result<Outcome> {
    match s {
        Err(Error::Hypothesis(_)) => Ok(Outcome::Skip),
        Err(e) => Err(e),
        Ok(s) => {
            let d = s.defect_of(mean);
            Ok(Outcome::check((s.defect.lower - d).max(d - s.defect.upper) - DEFECT_SLACK))
        }
    }
}

fn inequality_checks() -> Vec<Check<Prepared>> {
    vec![
        ("midpoint-below-mean", |p| {
            let hh = hermite_hadamard(&p.case.f, p.case.iv)?;
            Ok(Outcome::check(hh.lower - p.mean - MEAN_SLACK))
        }),
        ("mean-below-quarter-bound", |p| {
            Ok(Outcome::check(p.mean - quarter_upper(&p.case.f, p.case.iv)? - MEAN_SLACK))
        }),
        ("quarter-bound-below-trapezoid", |p| {
            let hh = hermite_hadamard(&p.case.f, p.case.iv)?;
            let q = quarter_upper(&p.case.f, p.case.iv)?;
            Ok(Outcome::check(q - hh.upper - 1e-12 * (1.0 + hh.upper.abs())))
        }),
        ("quarter-defect-sandwich", |p| {
            sandwich_outcome(quarter_defect_sandwich(&p.case.f, p.case.iv, &p.profile), p.mean)
        }),
        ("simpson-defect-sandwich", |p| {
            sandwich_outcome(simpson_defect_sandwich(&p.case.f, p.case.iv, &p.profile), p.mean)
        }),
        ("simpson-one-sided", |p| match simpson_one_sided(&p.case.f, p.case.iv, &p.profile) {
            Err(Error::Hypothesis(_)) => Ok(Outcome::Skip),
            Err(e) => Err(e),
            Ok(b) => Ok(if b.holds_for(p.mean, MEAN_SLACK) {
                Outcome::Pass
            } else {
                Outcome::Fail((b.value - p.mean).abs())
            }),
        }),
        ("simpson-error-bound", |p| {
            let s = simpson_estimate(&p.case.f, p.case.iv)?;
            Ok(Outcome::check((s.estimate - p.mean).abs() - s.err_bound - MEAN_SLACK))
        }),
    ]
}

fn prepare(case: &Case) -> Result<Prepared> {
    Ok(Prepared {
        case: case.clone(),
        mean: integrate_mean(&case.f, case.iv, ORACLE_TOL)?.value,
        profile: convexity_profile(&case.f, case.iv, 65)?,
    })
}

fn contained(e: crate::interval::Enclosure, x: f64, slack: f64) -> Outcome {
    Outcome::check((e.lower - x).max(x - e.upper) - slack)
}

fn means_checks(identric_exp: IdentricExponent) -> Vec<Check<(f64, f64)>> {
    let identric_check: fn(&(f64, f64)) -> Result<Outcome> = match identric_exp {
        IdentricExponent::Derived => |&(a, b)| {
            let i = identric(a, b);
            Ok(contained(identric_enclosure(a, b, IdentricExponent::Derived)?, i, MEANS_REL * i))
        },
        IdentricExponent::Printed => |&(a, b)| {
            let i = identric(a, b);
            Ok(contained(identric_enclosure(a, b, IdentricExponent::Printed)?, i, MEANS_REL * i))
        },
    };
    vec![
        ("mean-chain", |&(a, b)| {
            let m = all_means(a, b)?.as_array();
            let excess = m.windows(2).map(|w| w[0] - w[1] - MEANS_REL * w[1]).fold(f64::NEG_INFINITY, f64::max);
            Ok(Outcome::check(excess))
        }),
        ("log-mean-enclosure", |&(a, b)| {
            let l = logarithmic(a, b);
            Ok(contained(log_mean_enclosure(a, b)?, l, MEANS_REL * l))
        }),
        ("recip-log-mean-enclosure", |&(a, b)| {
            let slack = 16.0 * f64::EPSILON / a.min(b);
            Ok(contained(recip_log_mean_enclosure(a, b)?, recip_log_mean_defect(a, b)?, slack))
        }),
        ("identric-enclosure", identric_check),
        ("identric-of-squares-enclosure", |&(a, b)| {
            let i2 = identric(a * a, b * b);
            Ok(contained(identric_of_squares_enclosure(a, b)?, i2, MEANS_REL * i2))
        }),
    ]
}

/// Run the selected suites. Each suite draws `samples` cases from `seed`.
pub fn run(opts: VerifyOptions) -> Result<VerifyReport> {
    if opts.samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let mut properties = Vec::new();
    if opts.suite.includes(Suite::Identities) || opts.suite.includes(Suite::Inequalities) {
        let cases = corpus(opts.samples, opts.seed);
        if opts.suite.includes(Suite::Identities) {
            properties.extend(run_checks(&cases, &identity_checks()));
        }
        if opts.suite.includes(Suite::Inequalities) {
            let checks = inequality_checks();
            let prepared: Vec<Result<Prepared>> = cases.par_iter().map(prepare).collect();
            let broken = prepared.iter().filter(|p| p.is_err()).count();
            let ok: Vec<Prepared> = prepared.into_iter().filter_map(Result::ok).collect();
            for mut r in run_checks(&ok, &checks) {
                r.failed += broken;
                if broken > 0 {
                    r.worst_excess = f64::INFINITY;
                }
                properties.push(r);
            }
        }
    }
    if opts.suite.includes(Suite::Means) {
        let pairs = positive_pairs(opts.samples, opts.seed);
        properties.extend(run_checks(&pairs, &means_checks(opts.identric)));
    }
    Ok(VerifyReport { options: opts, properties })
}
