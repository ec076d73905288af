//! Command-line front end.
//!
//! Verbs: `single` (one interpolation with plots), `mc` (seeded Monte Carlo
//! study), `table4` (exact equispaced closed forms), `worst` (re-solve a
//! suspicious configuration at high precision), `compare` (Hermite vs
//! complete on the same data). All decimals print with 20 significant
//! digits; every command is deterministic given its flags.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::basis::{BasisKind, KnotConfiguration};
use crate::canon;
use crate::interpolate::{
    complete_interpolate, hermite_interpolate, CompleteData, HermiteData, Interpolant, Scheme,
};
use crate::mc::{self, Experiment, McPlan, McSummary};
use crate::poly::{PiecewisePolynomial, SupNormReport};
use crate::scalar::{ArithMode, Scalar, DEFAULT_PRECISION, ESCALATED_PRECISION};
use crate::svg::{self, Series};
use crate::Error;

/// Orders above this need `--allow-large-k`; the library itself goes to 18.
const K_STUDY_MAX: usize = 10;

#[derive(Parser)]
#[command(
    name = "hermitek",
    version,
    about = "Odd-degree Hermite spline interpolation with certified sup-norm error analysis"
)]
pub struct Cli {
    /// Output directory (default: $HERMITEK_OUT, then ./hermitek-out).
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Working precision in binary digits, or "rational" for exact
    /// arithmetic. Defaults to 256 bits (1024 for `worst`).
    #[arg(long, global = true, value_name = "BITS")]
    pub precision: Option<String>,

    /// Cap the worker-thread count. Results never depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Allow smoothness orders above 10 (the library supports up to 18).
    #[arg(long, global = true)]
    pub allow_large_k: bool,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Interpolate one function on one knot configuration; plot both curves.
    Single(SingleArgs),
    /// Run a seeded Monte Carlo study and write CSV + JSON summaries.
    Mc(McArgs),
    /// Print the exact equispaced closed forms (Bernoulli numbers and sups).
    Table4(Table4Args),
    /// Re-solve one configuration for t^{2k} at high precision.
    Worst(WorstArgs),
    /// Solve the same data under Hermite and complete conditions.
    Compare(CompareArgs),
}

#[derive(Copy, Clone, ValueEnum)]
pub enum SchemeArg {
    Hermite,
    Complete,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Hermite => Scheme::Hermite,
            SchemeArg::Complete => Scheme::Complete,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
pub enum BasisArg {
    Bspline,
    TruncatedPower,
}

impl From<BasisArg> for BasisKind {
    fn from(b: BasisArg) -> BasisKind {
        match b {
            BasisArg::Bspline => BasisKind::BSpline,
            BasisArg::TruncatedPower => BasisKind::TruncatedPower,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
pub enum ExperimentArg {
    Hinge,
    PerfectSpline,
    MonosplineHermite,
    MonosplineComplete,
}

impl From<ExperimentArg> for Experiment {
    fn from(e: ExperimentArg) -> Experiment {
        match e {
            ExperimentArg::Hinge => Experiment::HingeError,
            ExperimentArg::PerfectSpline => Experiment::PerfectSplineError,
            ExperimentArg::MonosplineHermite => Experiment::MonosplineHermite,
            ExperimentArg::MonosplineComplete => Experiment::MonosplineComplete,
        }
    }
}

/// Function selector shared by `single` and `compare`; exactly one required.
#[derive(Args)]
pub struct FnArgs {
    /// Hinge function (t-u)_+^{k-1}/(k-1)! with this parameter.
    #[arg(long, value_name = "U", group = "func")]
    pub hinge: Option<String>,

    /// The monomial t^{2k}.
    #[arg(long, group = "func")]
    pub monomial: bool,

    /// The scaled perfect spline built on the same knots.
    #[arg(long, group = "func")]
    pub perfect: bool,

    /// A piecewise polynomial loaded from JSON.
    #[arg(long, value_name = "PATH", group = "func")]
    pub file: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = ArgGroup::new("func").required(true))]
pub struct SingleArgs {
    #[arg(long)]
    pub k: usize,

    /// Interior knots, comma separated. Decimals parse exactly
    /// (0.54 means 27/50); a/b fractions are accepted too.
    #[arg(long, value_name = "T1,T2,...")]
    pub knots: String,

    #[command(flatten)]
    pub func: FnArgs,

    #[arg(long, value_enum, default_value_t = SchemeArg::Hermite)]
    pub scheme: SchemeArg,

    #[arg(long, value_enum, default_value_t = BasisArg::Bspline)]
    pub basis: BasisArg,

    /// Also solve the complete-spline problem and report both errors.
    #[arg(long)]
    pub compare_complete: bool,
}

#[derive(Args)]
pub struct McArgs {
    #[arg(long, value_enum)]
    pub experiment: ExperimentArg,

    #[arg(long)]
    pub k: usize,

    #[arg(long, default_value_t = 1000)]
    pub reps: u64,

    #[arg(long, default_value_t = 2024)]
    pub seed: u64,

    /// Size of the worst-configuration ledger.
    #[arg(long, default_value_t = 10, value_name = "N")]
    pub worst: usize,
}

#[derive(Args)]
pub struct Table4Args {
    /// Extend the table from k = 6 to k = 10, self-checking each decimal
    /// against the closed form evaluated at two float precisions.
    #[arg(long)]
    pub extended: bool,
}

#[derive(Args)]
pub struct WorstArgs {
    #[arg(long)]
    pub k: usize,

    /// Interior knots, comma separated, exact parse as in `single`.
    #[arg(long, value_name = "T1,T2,...")]
    pub knots: String,
}

#[derive(Args)]
#[command(group = ArgGroup::new("func").required(true))]
pub struct CompareArgs {
    #[arg(long)]
    pub k: usize,

    #[arg(long, value_name = "T1,T2,...")]
    pub knots: String,

    #[command(flatten)]
    pub func: FnArgs,

    #[arg(long, value_enum, default_value_t = BasisArg::Bspline)]
    pub basis: BasisArg,
}

/// Dispatches a parsed command line; `Ok(())` means every output was written.
pub fn run(cli: Cli) -> Result<(), Error> {
    if let Some(n) = cli.threads {
        // Replications reduce by index, so the pool size is invisible in
        // the results; ignore "already initialized" from repeated setup.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let out = resolve_out_dir(cli.out.as_deref());
    let precision = cli.precision.as_deref();
    match &cli.cmd {
        Cmd::Single(a) => cmd_single(a, parse_mode(precision, DEFAULT_PRECISION)?, cli.allow_large_k, &out),
        Cmd::Mc(a) => cmd_mc(a, parse_mode(precision, DEFAULT_PRECISION)?, cli.allow_large_k, &out),
        Cmd::Table4(a) => cmd_table4(a),
        Cmd::Worst(a) => cmd_worst(a, parse_mode(precision, ESCALATED_PRECISION)?, cli.allow_large_k, &out),
        Cmd::Compare(a) => cmd_compare(a, parse_mode(precision, DEFAULT_PRECISION)?, cli.allow_large_k, &out),
    }
}

fn resolve_out_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = env::var_os("HERMITEK_OUT") {
        return PathBuf::from(p);
    }
    PathBuf::from("hermitek-out")
}

fn parse_mode(s: Option<&str>, default_bits: u32) -> Result<ArithMode, Error> {
    match s {
        None => Ok(ArithMode::Float(default_bits)),
        Some("rational") | Some("exact") => Ok(ArithMode::Rational),
        Some(t) => {
            let bits: u32 = t
                .parse()
                .map_err(|_| Error::Parse(format!("precision must be a bit count or 'rational', got '{t}'")))?;
            if bits < 64 {
                return Err(Error::Domain("precision below 64 bits".into()));
            }
            Ok(ArithMode::Float(bits))
        }
    }
}

fn gate_k(k: usize, allow_large: bool) -> Result<(), Error> {
    crate::check_k(k)?;
    if k > K_STUDY_MAX && !allow_large {
        return Err(Error::Domain(format!(
            "k = {k} is above the studied range 3..={K_STUDY_MAX}; pass --allow-large-k"
        )));
    }
    Ok(())
}

/// Parses comma-separated knots into an exact rational configuration.
fn parse_config(k: usize, knots: &str) -> Result<KnotConfiguration, Error> {
    let mut interior = Vec::new();
    for part in knots.split(',') {
        interior.push(ArithMode::Rational.parse_scalar(part.trim())?);
    }
    KnotConfiguration::new(k, interior)
}

enum FnChoice {
    Hinge(Scalar),
    Monomial,
    Perfect,
    File(PathBuf),
}

impl FnChoice {
    fn resolve(args: &FnArgs) -> Result<FnChoice, Error> {
        if let Some(u) = &args.hinge {
            return Ok(FnChoice::Hinge(ArithMode::Rational.parse_scalar(u.trim())?));
        }
        if args.monomial {
            return Ok(FnChoice::Monomial);
        }
        if args.perfect {
            return Ok(FnChoice::Perfect);
        }
        if let Some(p) = &args.file {
            return Ok(FnChoice::File(p.clone()));
        }
        Err(Error::Parse("pick one of --hinge, --monomial, --perfect, --file".into()))
    }

    /// Filesystem-safe tag used in artifact names.
    fn tag(&self) -> String {
        match self {
            FnChoice::Hinge(u) => {
                format!("hinge_{}", u.exact_string().replace('/', "d"))
            }
            FnChoice::Monomial => "monomial".into(),
            FnChoice::Perfect => "perfect".into(),
            FnChoice::File(p) => format!(
                "file_{}",
                p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "input".into())
            ),
        }
    }

    fn describe(&self, k: usize) -> String {
        match self {
            FnChoice::Hinge(u) => format!("(t - {})_+^{} / {}!", u.exact_string(), k - 1, k - 1),
            FnChoice::Monomial => format!("t^{}", 2 * k),
            FnChoice::Perfect => "scaled perfect spline on the knots".into(),
            FnChoice::File(p) => format!("file {}", p.display()),
        }
    }

    fn build(&self, k: usize, config: &KnotConfiguration) -> Result<PiecewisePolynomial, Error> {
        match self {
            FnChoice::Hinge(u) => canon::hinge(k, u),
            FnChoice::Monomial => canon::monomial(k, ArithMode::Rational),
            FnChoice::Perfect => canon::perfect_spline(config),
            FnChoice::File(p) => {
                let doc = serde_json::from_str(&fs::read_to_string(p)?)?;
                PiecewisePolynomial::from_json(&doc)
            }
        }
    }
}

/// Sample, solve, subtract, certify: the whole single-run pipeline.
fn solve_one(
    config: &KnotConfiguration,
    f: &PiecewisePolynomial,
    scheme: Scheme,
    kind: BasisKind,
    mode: ArithMode,
) -> Result<(Interpolant, PiecewisePolynomial, SupNormReport), Error> {
    let cfg = config.convert(mode)?;
    let interp = match scheme {
        Scheme::Hermite => {
            let data = HermiteData::sample(f, &cfg)?;
            hermite_interpolate(&cfg, &data, kind, mode)?
        }
        Scheme::Complete => {
            let data = CompleteData::sample(f, &cfg)?;
            complete_interpolate(&cfg, &data, kind, mode)?
        }
    };
    let actual = interp.diagnostics().mode;
    let err = f.convert(actual)?.subtract(interp.spline())?;
    let report = err.sup_norm_default()?;
    Ok((interp, err, report))
}

fn write_text(path: &Path, content: &str) -> Result<(), Error> {
    fs::write(path, content)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_single(a: &SingleArgs, mode: ArithMode, allow_large: bool, out: &Path) -> Result<(), Error> {
    gate_k(a.k, allow_large)?;
    let config = parse_config(a.k, &a.knots)?;
    let choice = FnChoice::resolve(&a.func)?;
    let f = choice.build(a.k, &config)?;
    let scheme: Scheme = a.scheme.into();
    let kind: BasisKind = a.basis.into();

    let (interp, err, report) = solve_one(&config, &f, scheme, kind, mode)?;
    let diag = interp.diagnostics();
    println!(
        "{} interpolation of {}   k={} basis={} mode={}",
        scheme.label(),
        choice.describe(a.k),
        a.k,
        kind.label(),
        diag.mode.label()
    );
    println!("sup |E(f)|  = {}   certified={}", report.value.decimal(20), report.certified);
    println!("argmax     ~= {}", report.argmax.decimal(20));
    println!(
        "condition  ~= {:.3e}{}",
        diag.condition,
        if diag.escalated { "   (escalated precision)" } else { "" }
    );

    let mut complete_block = None;
    if a.compare_complete && !matches!(scheme, Scheme::Complete) {
        let (ci, _, crep) = solve_one(&config, &f, Scheme::Complete, kind, mode)?;
        println!(
            "complete sup |E(f)| = {}   certified={}",
            crep.value.decimal(20),
            crep.certified
        );
        complete_block = Some(json!({
            "sup_error": crep.value.decimal(20),
            "certified": crep.certified,
            "condition": ci.diagnostics().condition,
        }));
    }

    fs::create_dir_all(out)?;
    let base = format!("single_k{}_{}", a.k, choice.tag());
    let doc = json!({
        "k": a.k,
        "scheme": scheme.label(),
        "basis": kind.label(),
        "mode": diag.mode.label(),
        "knots": config.interior().iter().map(Scalar::exact_string).collect::<Vec<_>>(),
        "function": choice.describe(a.k),
        "condition": diag.condition,
        "escalated": diag.escalated,
        "sup_error": {
            "decimal": report.value.decimal(20),
            "exact": report.value.exact_string(),
            "argmax": report.argmax.decimal(20),
            "certified": report.certified,
        },
        "complete": complete_block,
        "interpolant": interp.spline().to_json(),
        "error": err.to_json(),
    });
    write_text(&out.join(format!("{base}.json")), &(serde_json::to_string_pretty(&doc)? + "\n"))?;

    let f_pts = svg::sample_curve(&f.convert(diag.mode)?, 0)?;
    let h_pts = svg::sample_curve(interp.spline(), 0)?;
    let plot1 = svg::line_plot(
        &format!("f and its {} spline interpolant, k={}", scheme.label(), a.k),
        &[
            Series { label: "f".into(), points: f_pts },
            Series { label: "H f".into(), points: h_pts },
        ],
    );
    write_text(&out.join(format!("{base}_interpolant.svg")), &plot1)?;

    let e_pts = svg::sample_curve(&err, 0)?;
    let plot2 = svg::line_plot(
        &format!("interpolation error, k={}, sup={}", a.k, report.value.decimal(6)),
        &[Series { label: "E(f)".into(), points: e_pts }],
    );
    write_text(&out.join(format!("{base}_error.svg")), &plot2)?;
    Ok(())
}

fn print_summary(s: &McSummary) {
    println!(
        "experiment={} k={} reps={} seed={} precision={}",
        s.experiment.label(),
        s.k,
        s.count + s.failed,
        s.seed,
        s.precision
    );
    println!("mean    = {}", s.mean.decimal(20));
    println!("median  = {}", s.median.decimal(20));
    println!("std_dev = {}", s.std_dev.decimal(20));
    println!("q95     = {}", s.q95.decimal(20));
    println!("q99     = {}", s.q99.decimal(20));
    println!("max     = {}", s.max.decimal(20));
    println!("min     = {}", s.min.decimal(20));
    println!(
        "escalated={} failed={} uncertified={} scaled_above_two={}",
        s.condition_flagged, s.failed, s.uncertified, s.scaled_above_two
    );
    if let Some(n) = s.below_equispaced {
        println!("below_equispaced = {n}");
    }
    for (i, w) in s.worst.iter().enumerate() {
        println!(
            "worst[{i}] rep={} error={} condition={:.3e} close_pairs={}",
            w.replication,
            w.error.decimal(20),
            w.condition,
            w.close_pairs
        );
    }
}

fn cmd_mc(a: &McArgs, mode: ArithMode, allow_large: bool, out: &Path) -> Result<(), Error> {
    gate_k(a.k, allow_large)?;
    let bits = match mode {
        ArithMode::Float(b) => b,
        ArithMode::Rational => {
            return Err(Error::Domain(
                "mc runs in float arithmetic; pass --precision <bits>".into(),
            ))
        }
    };
    let mut plan = McPlan::new(a.experiment.into(), a.k, a.reps, a.seed)?;
    plan.precision = bits;
    plan.worst_n = a.worst.min(a.reps as usize);
    plan.validate()?;
    let (summary, records) = mc::run_mc_full(&plan)?;
    print_summary(&summary);
    let (csv, json_path) = mc::write_outputs(&plan, &summary, &records, out)?;
    println!("wrote {}", csv.display());
    println!("wrote {}", json_path.display());
    Ok(())
}

/// The closed form 2 (2k-3)^{-2k} |(1 - 2^{-2k}) B_{2k}| in float arithmetic.
fn equispaced_sup_float(k: usize, bits: u32) -> Scalar {
    let m = ArithMode::Float(bits);
    let b = m.from_rational(&canon::bernoulli(2 * k));
    let pow = m.from_u64(2 * k as u64 - 3).pow_u32(2 * k as u32);
    let corr = m.one() - m.pow2(-(2 * k as i32));
    (m.from_u64(2) / pow * corr * b).abs()
}

fn cmd_table4(a: &Table4Args) -> Result<(), Error> {
    let upto = if a.extended { 10 } else { 6 };
    println!(
        "{:>2}  {:>12}  {:>26}  {}",
        "k", "B_2k", "equispaced sup (exact)", "decimal"
    );
    for k in 3..=upto {
        let b = canon::bernoulli(2 * k);
        let sup = canon::equispaced_sup(k)?;
        let dec = Scalar::Rat(sup.clone()).decimal(20);
        println!("{k:>2}  {:>12}  {:>26}  {dec}", b.to_string(), sup.to_string());
        if a.extended {
            // The exact value and the closed form at two float precisions
            // must agree on all 20 printed digits.
            for bits in [DEFAULT_PRECISION, ESCALATED_PRECISION] {
                let again = equispaced_sup_float(k, bits).decimal(20);
                if again != dec {
                    return Err(Error::Numeric(format!(
                        "closed-form self-check failed at k={k}, {bits} bits: {again} vs {dec}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn cmd_worst(a: &WorstArgs, mode: ArithMode, allow_large: bool, out: &Path) -> Result<(), Error> {
    gate_k(a.k, allow_large)?;
    let config = parse_config(a.k, &a.knots)?;
    let f = canon::monomial(a.k, ArithMode::Rational)?;
    let (interp, err, report) = solve_one(&config, &f, Scheme::Hermite, BasisKind::BSpline, mode)?;
    let diag = interp.diagnostics();
    let close = mc::close_pairs(config.interior());
    println!(
        "re-solve of t^{} on {} knots   k={} mode={}",
        2 * a.k,
        config.interior().len(),
        a.k,
        diag.mode.label()
    );
    println!("min knot gap        = {}", config.min_gap().decimal(6));
    println!("close pairs (<1e-2) = {close}");
    println!("condition          ~= {:.3e}{}", diag.condition, if diag.escalated { " (escalated)" } else { "" });
    println!("sup |E(t^{})| = {}   certified={}", 2 * a.k, report.value.decimal(20), report.certified);

    // Perfect-spline companion on the same knots: (2k)! x its error is the
    // dominance bound for the monomial error above.
    let s = canon::perfect_spline(&config)?;
    let (pi, _, prep) = solve_one(&config, &s, Scheme::Hermite, BasisKind::BSpline, mode)?;
    let fact = canon::factorial(prep.value.mode(), 2 * a.k);
    let bound = &prep.value * &fact;
    println!(
        "(2k)! x sup |E(S*)| = {}   certified={}",
        bound.decimal(20),
        prep.certified
    );

    fs::create_dir_all(out)?;
    let doc = json!({
        "k": a.k,
        "mode": diag.mode.label(),
        "knots": config.interior().iter().map(Scalar::exact_string).collect::<Vec<_>>(),
        "min_gap": config.min_gap().decimal(20),
        "close_pairs": close,
        "condition": diag.condition,
        "escalated": diag.escalated,
        "monomial_sup": {
            "decimal": report.value.decimal(20),
            "certified": report.certified,
        },
        "perfect_bound": {
            "decimal": bound.decimal(20),
            "certified": prep.certified,
            "condition": pi.diagnostics().condition,
        },
        "error": err.to_json(),
    });
    write_text(&out.join(format!("worst_k{}.json", a.k)), &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    Ok(())
}

fn cmd_compare(a: &CompareArgs, mode: ArithMode, allow_large: bool, out: &Path) -> Result<(), Error> {
    gate_k(a.k, allow_large)?;
    let config = parse_config(a.k, &a.knots)?;
    let choice = FnChoice::resolve(&a.func)?;
    let f = choice.build(a.k, &config)?;
    let kind: BasisKind = a.basis.into();

    let (hi, herr, hrep) = solve_one(&config, &f, Scheme::Hermite, kind, mode)?;
    let (ci, cerr, crep) = solve_one(&config, &f, Scheme::Complete, kind, mode)?;
    println!("function: {}   k={} basis={}", choice.describe(a.k), a.k, kind.label());
    println!("hermite  sup |E(f)| = {}   certified={}", hrep.value.decimal(20), hrep.certified);
    println!("complete sup |E(f)| = {}   certified={}", crep.value.decimal(20), crep.certified);
    if crep.value.is_zero() {
        println!("ratio: both interpolants are exact (f lies in the spline space)");
    } else {
        let ratio = &hrep.value.convert(ArithMode::float_default())
            / &crep.value.convert(ArithMode::float_default());
        println!("hermite / complete  = {}", ratio.decimal(20));
    }

    fs::create_dir_all(out)?;
    let base = format!("compare_k{}_{}", a.k, choice.tag());
    let doc = json!({
        "k": a.k,
        "basis": kind.label(),
        "knots": config.interior().iter().map(Scalar::exact_string).collect::<Vec<_>>(),
        "function": choice.describe(a.k),
        "hermite": {
            "sup_error": hrep.value.decimal(20),
            "certified": hrep.certified,
            "condition": hi.diagnostics().condition,
            "mode": hi.diagnostics().mode.label(),
        },
        "complete": {
            "sup_error": crep.value.decimal(20),
            "certified": crep.certified,
            "condition": ci.diagnostics().condition,
            "mode": ci.diagnostics().mode.label(),
        },
    });
    write_text(&out.join(format!("{base}.json")), &(serde_json::to_string_pretty(&doc)? + "\n"))?;

    let plot = svg::line_plot(
        &format!("Hermite vs complete interpolation error, k={}", a.k),
        &[
            Series { label: "hermite E(f)".into(), points: svg::sample_curve(&herr, 0)? },
            Series { label: "complete E(f)".into(), points: svg::sample_curve(&cerr, 0)? },
        ],
    );
    write_text(&out.join(format!("{base}_errors.svg")), &plot)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_parses_and_gates() {
        assert!(matches!(parse_mode(None, 256), Ok(ArithMode::Float(256))));
        assert!(matches!(parse_mode(Some("rational"), 256), Ok(ArithMode::Rational)));
        assert!(matches!(parse_mode(Some("512"), 256), Ok(ArithMode::Float(512))));
        assert!(parse_mode(Some("32"), 256).is_err());
        assert!(parse_mode(Some("many"), 256).is_err());
    }

    #[test]
    fn knot_strings_parse_exactly() {
        let c = parse_config(3, "0.54, 0.55").unwrap();
        assert_eq!(c.interior()[0].exact_string(), "27/50");
        assert_eq!(c.interior()[1].exact_string(), "11/20");
        assert!(parse_config(3, "0.5,0.5").is_err());
        assert!(parse_config(3, "0.9,0.1").is_err());
        assert!(parse_config(3, "0.5").is_err());
    }

    #[test]
    fn study_range_gate() {
        assert!(gate_k(10, false).is_ok());
        assert!(gate_k(11, false).is_err());
        assert!(gate_k(11, true).is_ok());
        assert!(gate_k(2, true).is_err());
    }

    #[test]
    fn closed_form_float_matches_exact() {
        for k in 3..=10 {
            let exact = Scalar::Rat(canon::equispaced_sup(k).unwrap()).decimal(20);
            assert_eq!(equispaced_sup_float(k, 256).decimal(20), exact, "k={k}");
        }
    }

    #[test]
    fn cli_parses_spec_shapes() {
        let cli = Cli::try_parse_from([
            "hermitek", "single", "--k", "3", "--knots", "0.54,0.55", "--hinge", "0.66",
        ])
        .unwrap();
        match cli.cmd {
            Cmd::Single(a) => {
                assert_eq!(a.k, 3);
                assert!(a.func.hinge.is_some());
            }
            _ => panic!("wrong verb"),
        }
        // The function selectors are mutually exclusive.
        assert!(Cli::try_parse_from([
            "hermitek", "single", "--k", "3", "--knots", "0.3,0.7", "--monomial", "--perfect",
        ])
        .is_err());
        // ... and one is required.
        assert!(Cli::try_parse_from(["hermitek", "single", "--k", "3", "--knots", "0.3,0.7"]).is_err());
    }
}
