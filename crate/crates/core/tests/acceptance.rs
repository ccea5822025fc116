//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Reference values marked "mpmath" were computed at 40+ digits and
//! frozen here; where a criterion quotes a figure that disagrees with its own
//! closed form, the deviation is printed as a note.

use std::f64::consts::{E, LN_2};
use std::process::ExitCode;

use hhbound::bounds::{
    bisection_enclosure, convexity_profile, hermite_hadamard, quarter_defect_sandwich,
    quarter_kernel_identity, quarter_upper, simpson_defect_sandwich, simpson_estimate,
    simpson_kernel_identity, DefectSandwich,
};
use hhbound::means::{
    all_means, identric, identric_enclosure, identric_of_squares_enclosure, log_mean_enclosure,
    logarithmic, recip_log_mean_defect, recip_log_mean_enclosure, IdentricExponent,
};
use hhbound::search::{alpha_star_search, evaluate_candidate, ratio_limit_scan, witness_g_ratio, Family};
use hhbound::verify::{corpus, Case};
use hhbound::{integrate_mean, parse, Enclosure, Error, Interval};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 500;
const CORPUS_SEED: u64 = 20;
const PAIR_SEED: u64 = 21;

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, detail, notes: Vec::new() }
    }

    fn note(mut self, label: &str, quoted: f64, computed: f64) -> Self {
        self.notes.push(format!(
            "{label}: quoted {quoted}, computed {computed:.10}, deviation {:.1e}",
            (quoted - computed).abs()
        ));
        self
    }
}

fn near(x: f64, want: f64, tol: f64) -> bool {
    (x - want).abs() <= tol
}

/// Log-uniform positive pairs over `[1e-3, 1e3]`, distinct.
fn pairs(n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let a = 10f64.powf(rng.gen_range(-3.0..3.0));
        let b = 10f64.powf(rng.gen_range(-3.0..3.0));
        if a != b {
            out.push((a, b));
        }
    }
    out
}

fn c1_witness() -> Outcome {
    let w = witness_g_ratio().expect("witness");
    let pass = near(w.value(), 0.18128, 5e-5) && w.profile.is_convex();
    Outcome::new(pass, format!("F_g(0,1) = {:.8} (target 0.18128 +- 5e-5), g convex: {}", w.value(), w.profile.is_convex()))
}

fn c2_containment(cases: &[Case], means: &[f64]) -> Outcome {
    let mut bad = 0;
    for (c, &m) in cases.iter().zip(means) {
        let lower = hermite_hadamard(&c.f, c.iv).unwrap().lower;
        let upper = quarter_upper(&c.f, c.iv).unwrap();
        if m > upper + 1e-10 || lower > m + 1e-10 {
            bad += 1;
        }
    }
    Outcome::new(bad == 0, format!("{} cases, {bad} outside [f(mid), N(1/4,1/2)] (slack 1e-10)", cases.len()))
}

fn sandwich_ok(s: Result<DefectSandwich, Error>, mean: f64) -> Option<bool> {
    match s {
        Err(Error::Hypothesis(_)) => None,
        Err(e) => panic!("sandwich failed: {e}"),
        Ok(s) => Some(s.defect.contains(s.defect_of(mean), 1e-9)),
    }
}

fn c3_sandwiches(cases: &[Case], means: &[f64]) -> Outcome {
    let (mut checked, mut bad) = (0, 0);
    for (c, &m) in cases.iter().zip(means) {
        let p = convexity_profile(&c.f, c.iv, 65).unwrap();
        for s in [quarter_defect_sandwich(&c.f, c.iv, &p), simpson_defect_sandwich(&c.f, c.iv, &p)] {
            if let Some(ok) = sandwich_ok(s, m) {
                checked += 1;
                bad += usize::from(!ok);
            }
        }
    }
    let f = parse("exp(x)").unwrap();
    let iv = Interval::unit();
    let p = convexity_profile(&f, iv, 65).unwrap();
    let mean = E - 1.0;
    let q = quarter_defect_sandwich(&f, iv, &p).unwrap();
    let s = simpson_defect_sandwich(&f, iv, &p).unwrap();
    let (dq, ds) = (q.defect_of(mean), s.defect_of(mean));
    let spots = near(dq, 0.0356493, 5e-8)
        && near(q.defect.lower, 0.0343484, 5e-8)
        && near(q.defect.upper, 0.0387321, 5e-8)
        && q.defect.contains(dq, 0.0)
        && near(ds, 0.0005793, 5e-8)
        && s.defect.lower == 0.0
        && near(s.defect.upper, 0.0012989, 5e-8)
        && s.defect.contains(ds, 0.0);
    Outcome::new(
        bad == 0 && checked > 0 && spots,
        format!(
            "{checked} determinate sandwiches, {bad} miss (slack 1e-9); exp on [0,1]: quarter {dq:.7} in [{:.7}, {:.7}], simpson {ds:.7} in [0, {:.7}]",
            q.defect.lower, q.defect.upper, s.defect.upper
        ),
    )
}

fn c4_identities(cases: &[Case]) -> Outcome {
    let (mut bad, mut worst) = (0, 0.0f64);
    for c in cases {
        for chk in [quarter_kernel_identity(&c.f, c.iv).unwrap(), simpson_kernel_identity(&c.f, c.iv).unwrap()] {
            if !chk.within(1e-8) {
                bad += 1;
                worst = worst.max(chk.relative_residual());
            }
        }
    }
    let sq = quarter_kernel_identity(&parse("x^2").unwrap(), Interval::unit()).unwrap();
    let qu = simpson_kernel_identity(&parse("x^4").unwrap(), Interval::unit()).unwrap();
    let exact = [sq.lhs, sq.rhs].iter().all(|v| near(*v, 1.0 / 24.0, 1e-12))
        && [qu.lhs, qu.rhs].iter().all(|v| near(*v, 1.0 / 120.0, 1e-12));
    Outcome::new(
        bad == 0 && exact,
        format!(
            "{} identity checks, {bad} beyond 1e-8 relative (+8 ulp rounding floor), worst {worst:.1e}; t^2: {:.12}/{:.12}, t^4: {:.12}/{:.12}",
            2 * cases.len(),
            sq.lhs,
            sq.rhs,
            qu.lhs,
            qu.rhs
        ),
    )
}

fn c5_simpson(cases: &[Case], means: &[f64]) -> Outcome {
    let mut bad = 0;
    for (c, &m) in cases.iter().zip(means) {
        let s = simpson_estimate(&c.f, c.iv).unwrap();
        if (s.estimate - m).abs() > s.err_bound + 1e-10 {
            bad += 1;
        }
    }
    let s = simpson_estimate(&parse("x^4").unwrap(), Interval::unit()).unwrap();
    let err = s.estimate - 0.2;
    let attained = near(err, 1.0 / 120.0, 1e-12) && near(s.err_bound, 1.0 / 120.0, 1e-12);
    Outcome::new(
        bad == 0 && attained,
        format!("{} cases, {bad} exceed the error bound; t^4 on [0,1]: error {err:.12} vs bound {:.12}", cases.len(), s.err_bound),
    )
}

fn c6_chain() -> Outcome {
    let ps = pairs(10_000, PAIR_SEED);
    let bad = ps
        .iter()
        .filter(|&&(a, b)| {
            let m = all_means(a, b).unwrap().as_array();
            m.windows(2).any(|w| w[0] > w[1] * (1.0 + 1e-12))
        })
        .count();
    let m = all_means(1.0, 2.0).unwrap().as_array();
    let closed = [4.0 / 3.0, 2f64.sqrt(), 1.0 / LN_2, 4.0 / E, 1.5, 2f64.powf(2.0 / 3.0)];
    let at12 = m.iter().zip(closed).all(|(x, c)| near(*x, c, 1e-7));
    Outcome::new(
        bad == 0 && at12,
        format!("H<=G<=L<=I<=A<=S broken on {bad} of {} pairs; (1,2) values {m:.7?}", ps.len()),
    )
}

fn contains_rel(e: Enclosure, x: f64) -> bool {
    e.contains(x, 1e-12 * x.abs())
}

fn c7_log_mean() -> Outcome {
    let ps = pairs(1_000, PAIR_SEED + 1);
    let bad = ps
        .iter()
        .filter(|&&(a, b)| {
            let ok_l = contains_rel(log_mean_enclosure(a, b).unwrap(), logarithmic(a, b));
            let slack = 16.0 * f64::EPSILON / a.min(b);
            let ok_r = recip_log_mean_enclosure(a, b).unwrap().contains(recip_log_mean_defect(a, b).unwrap(), slack);
            !(ok_l && ok_r)
        })
        .count();
    let l = log_mean_enclosure(1.0, 2.0).unwrap();
    let r = recip_log_mean_enclosure(1.0, 2.0).unwrap();
    let d = recip_log_mean_defect(1.0, 2.0).unwrap();
    // mpmath references
    let spot = near(l.lower, 1.44255461965298, 1e-7)
        && near(l.upper, 1.44280904158206, 1e-7)
        && l.contains(1.0 / LN_2, 0.0)
        && near(d, 0.0151861527733880, 1e-7)
        && near(r.lower, 0.0123456790123457, 1e-7)
        && near(r.upper, 0.0234375, 1e-7)
        && r.lower < d
        && d < r.upper;
    Outcome::new(
        bad == 0 && spot,
        format!(
            "{bad} of {} pairs uncontained; (1,2): L in ({:.7}, {:.7}) contains {:.7}, recipL defect {d:.7} in ({:.7}, {:.7})",
            ps.len(),
            l.lower,
            l.upper,
            1.0 / LN_2,
            r.lower,
            r.upper
        ),
    )
    .note("L-enclosure lower end", 1.4425545, l.lower)
    .note("recipL defect", 0.0151860, d)
}

fn c8_identric() -> Outcome {
    let i = identric(1.0, 2.0);
    let printed = identric_enclosure(1.0, 2.0, IdentricExponent::Printed).unwrap();
    let derived = identric_enclosure(1.0, 2.0, IdentricExponent::Derived).unwrap();
    let ps = pairs(1_000, PAIR_SEED + 2);
    let bad = ps
        .iter()
        .filter(|&&(a, b)| !contains_rel(identric_enclosure(a, b, IdentricExponent::Derived).unwrap(), identric(a, b)))
        .count();
    let sq = identric_of_squares_enclosure(1.0, 2.0).unwrap();
    let i14 = identric(1.0, 4.0);
    // mpmath references
    let spot = near(i, 1.47151776468577, 1e-6)
        && near(printed.upper, 1.47125126187649, 1e-6)
        && printed.upper < i
        && near(derived.upper, 1.47248160282983, 1e-6)
        && derived.upper >= i
        && near(i14, 2.33588884765208, 1e-7)
        && near(sq.lower, 2.33497150278155, 1e-7)
        && near(sq.upper, 2.33657354148564, 1e-7)
        && sq.lower < i14
        && i14 < sq.upper;
    Outcome::new(
        bad == 0 && spot,
        format!(
            "(1,2): printed upper {:.7} < I = {i:.7}; corrected upper {:.7} >= I; corrected uncontained on {bad} of {} pairs; I(1,4) = {i14:.7} in ({:.7}, {:.7})",
            printed.upper,
            derived.upper,
            ps.len(),
            sq.lower,
            sq.upper
        ),
    )
    .note("printed upper", 1.4712566, printed.upper)
    .note("corrected upper", 1.4724869, derived.upper)
    .note("I(1,4)", 2.3357915, i14)
    .note("I(1,4) enclosure lower end", 2.3349438, sq.lower)
    .note("I(1,4) enclosure upper end", 2.3365458, sq.upper)
}

fn c9_limit() -> Outcome {
    let hs = [1.0, 0.5, 0.1, 0.05, 0.01];
    let scan = ratio_limit_scan(&parse("exp(x)").unwrap(), 0.0, &hs).unwrap();
    let gaps: Vec<f64> = scan.iter().map(|(_, r)| (r.value.unwrap() - 1.0 / 6.0).abs()).collect();
    let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    let last = gaps[gaps.len() - 1];
    Outcome::new(monotone && last <= 2e-6, format!(
            "|F - 1/6| over h = {hs:?}: [{}]",
            gaps.iter().map(|g| format!("{g:.3e}")).collect::<Vec<_>>().join(", ")
        ))
}

fn c10_search() -> Outcome {
    let r = alpha_star_search(Family::PowerCombo, 2000, 1).unwrap();
    let in_range = (0.18128 - 1e-4..=0.25 + 1e-9).contains(&r.best_ratio);
    let tent: Vec<f64> = [0.1, 0.05, 0.01]
        .iter()
        .map(|&eps| evaluate_candidate(Family::SmoothedTent, &[eps]).unwrap().ratio.unwrap())
        .collect();
    let monotone = tent.windows(2).all(|w| w[1] > w[0]);
    Outcome::new(
        in_range && near(tent[2], 0.2454, 1e-3) && monotone,
        format!(
            "power-combo best {:.8} at {:?} ({} evaluations); smoothed tent at eps 0.1/0.05/0.01: {tent:.6?}",
            r.best_ratio,
            r.witness.named().collect::<Vec<_>>(),
            r.evaluations
        ),
    )
}

fn c11_bisection() -> Outcome {
    let f = parse("exp(x)").unwrap();
    let w0 = bisection_enclosure(&f, Interval::unit(), 0).unwrap().width();
    let w1 = bisection_enclosure(&f, Interval::unit(), 1).unwrap().width();
    let ratio = w0 / w1;
    Outcome::new(ratio >= 3.9, format!("width {w0:.7} -> {w1:.7}, factor {ratio:.4}"))
}

fn main() -> ExitCode {
    let cases = corpus(CORPUS_SIZE, CORPUS_SEED);
    let means: Vec<f64> = cases.iter().map(|c| integrate_mean(&c.f, c.iv, 1e-12).unwrap().value).collect();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("witness constant", Box::new(c1_witness)),
        ("quarter-bound containment", Box::new(|| c2_containment(&cases, &means))),
        ("defect sandwich containment", Box::new(|| c3_sandwiches(&cases, &means))),
        ("kernel identity residuals", Box::new(|| c4_identities(&cases))),
        ("simpson error consistency", Box::new(|| c5_simpson(&cases, &means))),
        ("means chain", Box::new(c6_chain)),
        ("log-mean enclosures", Box::new(c7_log_mean)),
        ("identric bounds", Box::new(c8_identric)),
        ("ratio limit", Box::new(c9_limit)),
        ("search floor and cap", Box::new(c10_search)),
        ("bisection refinement", Box::new(c11_bisection)),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failed += usize::from(!o.pass);
        println!("{} [{:>2}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        for n in o.notes {
            println!("          note: {n}");
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
