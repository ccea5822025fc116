mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hhbound::bounds::{
    adaptive_enclosure, convexity_profile, hermite_hadamard, quarter_defect_sandwich, quarter_upper,
    simpson_defect_sandwich, simpson_estimate, Convexity, Curvature, Orientation,
};
use hhbound::means::{
    all_means, identric, identric_enclosure, identric_of_squares_enclosure, log_mean_enclosure,
    logarithmic, recip_log_mean_defect, recip_log_mean_enclosure, IdentricExponent,
};
use hhbound::search::{alpha_star_search, f_ratio, Family};
use hhbound::verify::{self, Suite, VerifyOptions};
use hhbound::{integrate_mean, parse, ConvexityProfile, Enclosure, Error, Expression, Interval};
use indexmap::IndexMap;

use report::{Report, Status, Value};

/// Oracle tolerance for the reference mean echoed next to every enclosure.
const ORACLE_TOL: f64 = 1e-12;
const PROFILE_SAMPLES: usize = 65;

#[derive(Parser)]
#[command(name = "hhbound", version, about = "Certified enclosures for means of convex integrands")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enclose the mean value of f over [a, b].
    Enclose(EncloseArgs),
    /// Sandwich the defect of N(1/4,1/2) or Simpson's value and check it
    /// against the reference integrator.
    Defect(DefectArgs),
    /// The six elementary means, optionally with one of the derived enclosures.
    Means(MeansArgs),
    /// The endpoint-weight ratio F_f(a, b).
    Ratio(RangeArgs),
    /// Maximize F over a parametric family on [0, 1].
    SearchAlpha(SearchArgs),
    /// Run the seeded property suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RangeArgs {
    /// Integrand in x, e.g. "exp(x)".
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Classic,
    N14,
    Simpson,
    Adaptive,
}

#[derive(Args)]
struct EncloseArgs {
    #[command(flatten)]
    range: RangeArgs,
    #[arg(long, value_enum, default_value = "n14")]
    method: Method,
    /// Target width for the adaptive method.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SandwichKind {
    /// N(1/4,1/2) minus the mean, from f'' at the nodes.
    Quarter,
    /// Simpson's value against the mean, from the spread of f''.
    Simpson,
}

#[derive(Args)]
struct DefectArgs {
    #[command(flatten)]
    range: RangeArgs,
    #[arg(long, value_enum)]
    sandwich: SandwichKind,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeanTarget {
    #[value(name = "L")]
    Log,
    #[value(name = "I")]
    Identric,
    #[value(name = "Isq")]
    IdentricOfSquares,
    #[value(name = "recipL")]
    RecipLog,
}

#[derive(Args)]
struct MeansArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, value_enum)]
    enclose: Option<MeanTarget>,
    /// Use the printed identric exponent, which is a quarter of the correct one.
    #[arg(long)]
    printed_constant: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_parser = ["power", "power-combo", "smoothed-tent"])]
    family: String,
    #[arg(long, default_value_t = 2000)]
    budget: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = ["identities", "inequalities", "means", "all"], default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Check the identric enclosure with the printed exponent.
    #[arg(long)]
    printed_constant: bool,
}

fn convexity_name(c: Convexity) -> &'static str {
    match c {
        Convexity::Yes => "yes",
        Convexity::No => "no",
        Convexity::Indeterminate => "indeterminate",
    }
}

fn curvature_name(c: Curvature) -> &'static str {
    match c {
        Curvature::Convex => "convex",
        Curvature::Concave => "concave",
        Curvature::Indeterminate => "indeterminate",
    }
}

fn enclosure_value(e: Enclosure) -> Value {
    Value::Map(IndexMap::from([("lower".to_string(), e.lower.into()), ("upper".to_string(), e.upper.into())]))
}

fn range(r: &RangeArgs, report: &mut Report) -> hhbound::Result<(Expression, Interval)> {
    report.input("f", r.f.as_str()).input("a", r.a).input("b", r.b);
    Ok((parse(&r.f)?, Interval::new(r.a, r.b)?))
}

fn require_convex(p: &ConvexityProfile) -> hhbound::Result<()> {
    if p.is_convex() {
        Ok(())
    } else {
        Err(Error::Hypothesis("integrand is not profiled convex on [a, b]"))
    }
}

fn enclose(args: &EncloseArgs, report: &mut Report) -> hhbound::Result<()> {
    let (f, iv) = range(&args.range, report)?;
    let method = args.method.to_possible_value().expect("no skipped variants");
    report.input("method", method.get_name());
    if matches!(args.method, Method::Adaptive) {
        report.input("tol", args.tol);
    }
    let prof = convexity_profile(&f, iv, PROFILE_SAMPLES)?;
    report.output("f_convex", convexity_name(prof.f_convex));
    let enclosure = match args.method {
        Method::Classic => {
            require_convex(&prof)?;
            report.cite(&["hermite-hadamard"]);
            hermite_hadamard(&f, iv)?
        }
        Method::N14 => {
            require_convex(&prof)?;
            report.cite(&["hermite-hadamard", "quarter-bound"]);
            Enclosure::new(hermite_hadamard(&f, iv)?.lower, quarter_upper(&f, iv)?)
        }
        Method::Simpson => {
            let s = simpson_estimate(&f, iv)?;
            report.cite(&["simpson-error-term"]);
            report.output("estimate", s.estimate).output("err_bound", s.err_bound).output("max_abs_f4", s.max_abs_f4);
            s.enclosure()
        }
        Method::Adaptive => {
            let r = adaptive_enclosure(&f, iv, args.tol, &prof)?;
            report.cite(&["quarter-bound", "bisection-refinement"]);
            report.output("leaves", r.leaves).output("evaluations", r.evaluations);
            r.enclosure
        }
    };
    let mean = integrate_mean(&f, iv, ORACLE_TOL)?.value;
    let contains = enclosure.contains(mean, 1e-10);
    report
        .output("lower", enclosure.lower)
        .output("upper", enclosure.upper)
        .output("width", enclosure.width())
        .output("oracle_mean", mean)
        .output("contains", contains)
        .require(contains);
    Ok(())
}

fn defect(args: &DefectArgs, report: &mut Report) -> hhbound::Result<()> {
    let (f, iv) = range(&args.range, report)?;
    let kind = args.sandwich.to_possible_value().expect("no skipped variants");
    report.input("sandwich", kind.get_name());
    let prof = convexity_profile(&f, iv, PROFILE_SAMPLES)?;
    report.output("f2_shape", curvature_name(prof.f2_shape));
    let s = match args.sandwich {
        SandwichKind::Quarter => {
            report.cite(&["quarter-defect-sandwich", "quarter-kernel-identity"]);
            quarter_defect_sandwich(&f, iv, &prof)?
        }
        SandwichKind::Simpson => {
            report.cite(&["simpson-defect-sandwich", "simpson-kernel-identity"]);
            simpson_defect_sandwich(&f, iv, &prof)?
        }
    };
    let mean = integrate_mean(&f, iv, ORACLE_TOL)?.value;
    let d = s.defect_of(mean);
    let contains = s.defect.contains(d, 1e-9);
    let orientation = match s.orientation {
        Orientation::BoundMinusMean => "bound-minus-mean",
        Orientation::MeanMinusBound => "mean-minus-bound",
    };
    report
        .output("bound", s.bound)
        .output("orientation", orientation)
        .output("defect", enclosure_value(s.defect))
        .output("mean", enclosure_value(s.mean_enclosure()))
        .output("oracle_mean", mean)
        .output("oracle_defect", d)
        .output("contains", contains)
        .require(contains);
    Ok(())
}

fn means(args: &MeansArgs, report: &mut Report) -> hhbound::Result<()> {
    let (a, b) = (args.a, args.b);
    report.input("a", a).input("b", b);
    if let Some(t) = args.enclose {
        report.input("enclose", t.to_possible_value().expect("no skipped variants").get_name());
    }
    report.input("printed_constant", args.printed_constant);
    let m = all_means(a, b)?;
    report.cite(&["elementary-means"]);
    for (name, v) in hhbound::MeanSet::NAMES.iter().zip(m.as_array()) {
        report.output(name, v);
    }
    let Some(target) = args.enclose else {
        return Ok(());
    };
    let exponent = if args.printed_constant { IdentricExponent::Printed } else { IdentricExponent::Derived };
    let (enclosure, value, slack) = match target {
        MeanTarget::Log => {
            report.cite(&["log-mean-bounds"]);
            let l = logarithmic(a, b);
            (log_mean_enclosure(a, b)?, l, 1e-12 * l)
        }
        MeanTarget::RecipLog => {
            report.cite(&["reciprocal-log-mean-bounds"]);
            (recip_log_mean_enclosure(a, b)?, recip_log_mean_defect(a, b)?, 16.0 * f64::EPSILON / a.min(b))
        }
        MeanTarget::Identric => {
            report.cite(&["identric-bounds"]);
            let i = identric(a, b);
            report.output("exponent", hhbound::means::identric_exponent(a, b, exponent));
            (identric_enclosure(a, b, exponent)?, i, 1e-12 * i)
        }
        MeanTarget::IdentricOfSquares => {
            report.cite(&["identric-of-squares-bounds"]);
            let i = identric(a * a, b * b);
            (identric_of_squares_enclosure(a, b)?, i, 1e-12 * i)
        }
    };
    let contains = enclosure.contains(value, slack);
    report
        .output("enclosure", enclosure_value(enclosure))
        .output("target", value)
        .output("contains", contains)
        .require(contains);
    Ok(())
}

fn ratio(args: &RangeArgs, report: &mut Report) -> hhbound::Result<()> {
    let (f, iv) = range(args, report)?;
    let r = f_ratio(&f, iv)?;
    report.cite(&["endpoint-weight-ratio"]);
    report
        .output("value", r.value)
        .output("numerator", r.numerator)
        .output("denominator", r.denominator)
        .output("degenerate", r.degenerate);
    Ok(())
}

fn search_alpha(args: &SearchArgs, report: &mut Report) -> hhbound::Result<()> {
    report.input("family", args.family.as_str()).input("budget", args.budget).input("seed", args.seed);
    let family: Family = args.family.parse()?;
    let r = alpha_star_search(family, args.budget, args.seed)?;
    report.cite(&["endpoint-weight-ratio", "quarter-bound"]);
    let witness: IndexMap<String, Value> = r.witness.named().map(|(k, v)| (k.to_string(), v.into())).collect();
    report
        .output("best_ratio", r.best_ratio)
        .output("witness", Value::Map(witness))
        .output("expression", r.witness.expression()?.to_string())
        .output("evaluations", r.evaluations)
        .output("seed", r.seed);
    Ok(())
}

fn run_verify(args: &VerifyArgs, report: &mut Report) -> hhbound::Result<()> {
    report
        .input("suite", args.suite.as_str())
        .input("samples", args.samples)
        .input("seed", args.seed)
        .input("printed_constant", args.printed_constant);
    let suite: Suite = args.suite.parse()?;
    let identric = if args.printed_constant { IdentricExponent::Printed } else { IdentricExponent::Derived };
    let r = verify::run(VerifyOptions { suite, samples: args.samples, seed: args.seed, identric })?;
    report.cite(&["property-suites"]);
    let mut props = IndexMap::new();
    for p in &r.properties {
        let row = IndexMap::from([
            ("passed".to_string(), p.passed.into()),
            ("failed".to_string(), p.failed.into()),
            ("skipped".to_string(), p.skipped.into()),
            ("worst_excess".to_string(), p.worst_excess.into()),
        ]);
        props.insert(p.name.to_string(), Value::Map(row));
    }
    report.output("properties", Value::Map(props)).output("failures", r.failures()).require(r.all_passed());
    Ok(())
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Enclose(_) => "enclose",
            Command::Defect(_) => "defect",
            Command::Means(_) => "means",
            Command::Ratio(_) => "ratio",
            Command::SearchAlpha(_) => "search-alpha",
            Command::Verify(_) => "verify",
        }
    }
}

fn execute(command: &Command) -> Report {
    let mut report = Report::new(command.name());
    let result = match command {
        Command::Enclose(a) => enclose(a, &mut report),
        Command::Defect(a) => defect(a, &mut report),
        Command::Means(a) => means(a, &mut report),
        Command::Ratio(a) => ratio(a, &mut report),
        Command::SearchAlpha(a) => search_alpha(a, &mut report),
        Command::Verify(a) => run_verify(a, &mut report),
    };
    if let Err(e) = result {
        report.status = Status::Error;
        report.output("error", e.to_string());
    }
    report
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code != 0 && argv.iter().any(|a| a == "--json") {
                let mut report = Report::new(argv.get(1).map_or("", String::as_str));
                report.status = Status::Error;
                let message = e.render().to_string();
                report.output("error", message.lines().next().unwrap_or_default().trim_start_matches("error: "));
                println!("{}", report.to_json());
            } else {
                let _ = e.print();
            }
            return ExitCode::from(code as u8);
        }
    };
    let report = execute(&cli.command);
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_table());
    }
    ExitCode::from(report.status.exit_code())
}
