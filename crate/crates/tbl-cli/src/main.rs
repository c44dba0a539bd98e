//! `tbl`: enumerate characters, evaluate L-values and Bessel functions, and
//! verify the identities one case at a time or as a suite.
//!
//! Exit status: 0 when every requested verification passes, 1 when any case
//! fails, 2 on usage errors and violated hypotheses.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use tbl::characters::{enumerate_characters, gauss_sum};
use tbl::identities::{
    self, reports_to_json, reports_to_jsonl, run_suite, IdentityCase, SuiteFilter, SuiteSummary, TheoremId, TolProfile,
    VerificationReport,
};
use tbl::series::{Smoothing, TestFunction};
use tbl::Error;

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(text: &str) {
    if let Err(e) = std::io::stdout().write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
    }
}

macro_rules! out {
    ($($arg:tt)*) => {
        emit(&format!("{}\n", format_args!($($arg)*)))
    };
}

#[derive(Parser)]
#[command(name = "tbl", version, about = "Twisted divisor sums and their Bessel-series identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the Dirichlet characters mod q in enumeration order.
    ListCharacters {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate L(s, χ) for the character with the given index mod q.
    Lvalue {
        #[arg(long)]
        q: u64,
        #[arg(long = "char")]
        index: usize,
        /// s as "re" or "re,im"
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Evaluate a Bessel function of real order.
    Bessel {
        #[arg(long, value_enum)]
        kind: BesselKind,
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        x: f64,
    },
    /// Verify one identity at one parameter point.
    Verify(VerifyArgs),
    /// Verify every registered case of the selected identities.
    Suite(SuiteArgs),
    /// L(1, χ) for every real primitive non-principal χ up to the given modulus.
    Positivity {
        #[arg(long, default_value_t = 50)]
        q_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One JSON record per line.
    Structured,
    /// A single JSON document with a summary.
    Document,
}

#[derive(Clone, Copy, ValueEnum)]
enum BesselKind {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "J", alias = "j")]
    J,
    #[value(name = "Y", alias = "y")]
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum SmoothingKind {
    Smooth,
    Window,
    Truncated,
}

/// Characters are addressed as (modulus, index). One-character identities
/// take --q/--char; two-character identities take χ₁ as --p/--char and χ₂ as
/// --q/--char2.
#[derive(Args)]
struct VerifyArgs {
    /// Theorem identifier, e.g. T2_13, C3_1, T4_5, P1_1_classical.
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long = "char")]
    index: Option<usize>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long = "char2")]
    index2: Option<usize>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    x: Option<f64>,
    /// Truncation index N of the weight −ν identities.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Voronoi test function: exp, t^2 or gauss.
    #[arg(long)]
    f: Option<String>,
    /// Tolerance; the family default when absent.
    #[arg(long)]
    tol: Option<f64>,
    /// Summation of the Voronoi dual series.
    #[arg(long, value_enum)]
    smoothing: Option<SmoothingKind>,
    /// Dual-series terms for --smoothing.
    #[arg(long, default_value_t = 20_000)]
    n_max: usize,
    /// Window width for --smoothing window.
    #[arg(long, default_value_t = 200)]
    window: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SuiteArgs {
    /// Run every registered identity.
    #[arg(long, conflicts_with = "filter")]
    all: bool,
    /// Glob patterns on theorem identifiers, e.g. 'T3_*'.
    #[arg(long, num_args = 1..)]
    filter: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// One tolerance for every family, replacing the defaults.
    #[arg(long)]
    tol: Option<f64>,
}

/// A failure and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Hypothesis(_) | Error::ExcludedParameter(_) | Error::Domain(_) | Error::InvalidModulus(_) | Error::Pole(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::ListCharacters { q, format } => list_characters(q, format),
        Command::Lvalue { q, index, s } => lvalue(q, index, &s),
        Command::Bessel { kind, nu, x } => bessel(kind, nu, x),
        Command::Verify(args) => verify(args),
        Command::Suite(args) => suite(args),
        Command::Positivity { q_max, format } => positivity(q_max, format),
    }
}

fn list_characters(q: u64, format: Format) -> Result<u8, Failure> {
    let chars = enumerate_characters(q)?;
    if format == Format::Text {
        out!("{:>5}  {:<12} {:>9} {:>9}  {:<6} {:>5}  {:<5} {:<9}", "index", "label", "conductor", "primitive", "parity", "order", "real", "principal");
        for c in &chars {
            out!(
                "{:>5}  {:<12} {:>9} {:>9}  {:<6} {:>5}  {:<5} {:<9}",
                c.index(),
                c.label(),
                c.conductor(),
                c.is_primitive(),
                c.parity().to_string(),
                c.order(),
                c.is_real(),
                c.is_principal()
            );
        }
    } else {
        let rows: Vec<_> = chars
            .iter()
            .map(|c| {
                let t = gauss_sum(c);
                json!({
                    "q": q, "index": c.index(), "label": c.label(), "conductor": c.conductor(),
                    "primitive": c.is_primitive(), "parity": c.parity(), "order": c.order(),
                    "real": c.is_real(), "principal": c.is_principal(),
                    "gauss_re": t.re, "gauss_im": t.im,
                })
            })
            .collect();
        emit_json(&rows, format);
    }
    Ok(0)
}

fn emit_json(rows: &[serde_json::Value], format: Format) {
    if format == Format::Document {
        out!("{}", serde_json::to_string_pretty(rows).expect("json"));
    } else {
        for r in rows {
            out!("{r}");
        }
    }
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|_| usage(format!("cannot parse '{p}' in s = '{s}'")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(usage(format!("s must be 're' or 're,im', got '{s}'"))),
    }
}

fn lvalue(q: u64, index: usize, s: &str) -> Result<u8, Failure> {
    let s = parse_complex(s)?;
    let chi = tbl::characters::character(q, index)?;
    let v = tbl::specfun::l_value(s, &chi)?;
    out!("L({}{:+}i, {}) = {:.15e} {:+.15e}i", s.re, s.im, chi.label(), v.re, v.im);
    Ok(0)
}

fn bessel(kind: BesselKind, nu: f64, x: f64) -> Result<u8, Failure> {
    use tbl::bessel::{bessel_i, bessel_j, bessel_k, bessel_y};
    let (name, v) = match kind {
        BesselKind::K => ("K", bessel_k(nu, x)?),
        BesselKind::I => ("I", bessel_i(nu, x)?),
        BesselKind::J => ("J", bessel_j(nu, x)?),
        BesselKind::Y => ("Y", bessel_y(nu, x)?),
    };
    out!("{name}_{nu}({x}) = {v:.15e}");
    Ok(0)
}

fn build_case(a: &VerifyArgs) -> Result<IdentityCase, Failure> {
    let id: TheoremId = a.theorem.parse()?;
    let mut case = IdentityCase::new(id);
    match id.character_count() {
        0 => {
            if a.q.is_some() || a.index.is_some() || a.p.is_some() || a.index2.is_some() {
                return Err(usage(format!("{id} takes no character")));
            }
        }
        1 => {
            if a.p.is_some() || a.index2.is_some() {
                return Err(usage(format!("{id} takes one character (--q, --char)")));
            }
            let (q, i) = a.q.zip(a.index).ok_or_else(|| usage(format!("{id} needs --q and --char")))?;
            case = case.chi(q, i);
        }
        _ => {
            let (p, i) = a.p.zip(a.index).ok_or_else(|| usage(format!("{id} needs χ₁ as --p and --char")))?;
            let (q, j) = a.q.zip(a.index2).ok_or_else(|| usage(format!("{id} needs χ₂ as --q and --char2")))?;
            case = case.chi(p, i).chi2(q, j);
        }
    }
    case.k = a.k;
    case.nu = a.nu;
    case.a = a.a;
    case.x = a.x;
    case.n = a.n;
    case.alpha = a.alpha;
    case.beta = a.beta;
    case.f = a.f.as_deref().map(TestFunction::parse).transpose()?;
    case.smoothing = a.smoothing.map(|s| match s {
        SmoothingKind::Smooth => Smoothing::SmoothCutoff { n_max: a.n_max },
        SmoothingKind::Window => Smoothing::Window { n_max: a.n_max, width: a.window },
        SmoothingKind::Truncated => Smoothing::Truncated { n_max: a.n_max },
    });
    Ok(case)
}

fn text_line(r: &VerificationReport) -> String {
    let params = serde_json::to_value(&r.case).expect("json");
    let params: Vec<String> = params
        .as_object()
        .expect("object")
        .iter()
        .filter(|(k, _)| *k != "theorem")
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    match &r.error {
        Some(e) => format!("FAIL {:<15} {}  error: {e}", r.case.theorem.name(), params.join(" ")),
        None => format!(
            "{} {:<15} {}  lhs={:.12e}{:+.12e}i rhs={:.12e}{:+.12e}i rel_err={:.2e} abs_err={:.2e} tol={:.0e} terms={}/{} {:.0}ms",
            if r.pass { "PASS" } else { "FAIL" },
            r.case.theorem.name(),
            params.join(" "),
            r.lhs.re,
            r.lhs.im,
            r.rhs.re,
            r.rhs.im,
            r.rel_err,
            r.abs_err,
            r.tol,
            r.lhs_terms,
            r.rhs_terms,
            r.wall_time.as_secs_f64() * 1e3
        ),
    }
}

fn verify(a: VerifyArgs) -> Result<u8, Failure> {
    let case = build_case(&a)?;
    let tol = match a.tol {
        Some(t) if !(t > 0.0) || !t.is_finite() => return Err(usage(format!("--tol must be positive, got {t}"))),
        Some(t) => t,
        None => TolProfile::default().for_theorem(case.theorem),
    };
    let report = identities::verify(&case, tol)?;
    match a.format {
        Format::Text => out!("{}", text_line(&report)),
        Format::Structured => out!("{}", serde_json::to_string(&report).expect("json")),
        Format::Document => out!("{}", reports_to_json(std::slice::from_ref(&report))),
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn suite(a: SuiteArgs) -> Result<u8, Failure> {
    let filter = if a.all {
        SuiteFilter::all()
    } else if a.filter.is_empty() {
        return Err(usage("suite needs --all or --filter PATTERN…"));
    } else {
        SuiteFilter::new(&a.filter)?
    };
    let tol = a.tol.map(TolProfile::uniform).unwrap_or_default();
    tol.validate()?;
    let reports = run_suite(&filter, &tol);
    let summary = SuiteSummary::of(&reports);
    let body = match a.format {
        Format::Text => {
            let mut s: String = reports.iter().map(|r| text_line(r) + "\n").collect();
            s.push_str(&format!(
                "{} cases: {} passed, {} failed ({} errors)\n",
                summary.total, summary.passed, summary.failed, summary.errored
            ));
            s
        }
        Format::Structured => reports_to_jsonl(&reports),
        Format::Document => reports_to_json(&reports) + "\n",
    };
    match &a.out {
        Some(path) => {
            std::fs::File::create(path)
                .and_then(|mut f| f.write_all(body.as_bytes()))
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("{} cases: {} passed, {} failed; report written to {}", summary.total, summary.passed, summary.failed, path.display());
        }
        None => emit(&body),
    }
    Ok(if summary.all_passed() { 0 } else { 1 })
}

fn positivity(q_max: u64, format: Format) -> Result<u8, Failure> {
    let entries = identities::positivity_scan(q_max)?;
    let all_positive = entries.iter().all(|e| e.value > 0.0);
    if format == Format::Text {
        for e in &entries {
            out!("q={:<3} index={:<3} {:<4} L(1,χ) = {:.12}", e.q, e.index, e.parity.to_string(), e.value);
        }
        out!("{} real primitive non-principal characters, all positive: {all_positive}", entries.len());
    } else {
        let rows: Vec<_> = entries.iter().map(|e| serde_json::to_value(e).expect("json")).collect();
        emit_json(&rows, format);
    }
    Ok(if all_positive { 0 } else { 1 })
}
