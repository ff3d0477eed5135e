//! Command-line front end: Eulerian rows, χ sequences, wedge-system
//! searches, inequality sweeps and the self-test suite, with plain, JSON
//! and CSV output.
//!
//! Exit codes: 0 success, 1 a requested verdict failed, 2 usage or input
//! errors, 3 data inconsistencies (integrality failures), 4 budget
//! exhausted or interrupted.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Duration;

use eulerian_chi::chi::{
    chi_from_profile, chi_same_class, divisible_by_six, numerical_condition, ChiSequence,
    DegreeProfile, IntersectionProfile,
};
use eulerian_chi::eulerian::{generalized_eulerian, generalized_eulerian_row};
use eulerian_chi::inequalities::{sweep, IneqVerdict, SweepPoint, VerdictOutcome, CHECK_NAMES};
use eulerian_chi::selftest;
use eulerian_chi::wedge::{
    search_with_cancel, IndexFunction, SearchBounds, SearchMode, SearchReport, SystemInstance,
};
use eulerian_chi::Error;

static CANCEL: AtomicBool = AtomicBool::new(false);

extern "C" fn on_sigint(_: libc::c_int) {
    CANCEL.store(true, Ordering::Relaxed);
}

const EXIT_VERDICT_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_DATA: i32 = 3;
const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    AllIntegers,
    BoundedRange,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::AllIntegers => SearchMode::AllIntegers,
            ModeArg::BoundedRange => SearchMode::BoundedRange,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "eulerian-chi",
    version,
    about = "Exact Eulerian numbers, intersection Euler characteristics, wedge-system search and inequality verification"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for sweep/search (default: EULERIAN_CHI_THREADS or
    /// all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print E_r(n, k) or the full row E_r(n, ·).
    Eulerian {
        /// Order r >= 1.
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Compute a χ sequence plus the numerical-condition and
    /// divisibility-by-6 verdicts.
    Chi {
        /// Intersection-profile JSON file.
        #[arg(long, conflicts_with = "same_class")]
        profile: Option<PathBuf>,
        /// Build the profile from degrees on one ample class.
        #[arg(long = "same-class")]
        same_class: bool,
        #[arg(long, requires = "same_class")]
        r: Option<usize>,
        #[arg(long, requires = "same_class")]
        n: Option<usize>,
        /// Degrees d_1 .. d_r.
        #[arg(long, num_args = 1.., requires = "same_class")]
        d: Vec<u64>,
        /// The integer H^n/n!, as a decimal string.
        #[arg(long, default_value = "1")]
        h: String,
        /// Enforce the sanity floor I(eps) >= n! on profile input.
        #[arg(long = "validate-rr")]
        validate_rr: bool,
    },
    /// Evaluate the numerical condition 2 Σ χ² <= (Σ χ)² on a sequence.
    Numcond {
        #[arg(long, conflicts_with_all = ["same_class", "values"])]
        profile: Option<PathBuf>,
        #[arg(long = "same-class")]
        same_class: bool,
        #[arg(long, requires = "same_class")]
        r: Option<usize>,
        #[arg(long, requires = "same_class")]
        n: Option<usize>,
        #[arg(long, num_args = 1.., requires = "same_class")]
        d: Vec<u64>,
        #[arg(long, default_value = "1")]
        h: String,
        /// Comma-separated magnitudes, e.g. "14,44,14".
        #[arg(long)]
        values: Option<String>,
    },
    /// Exhaustive wedge-system solution search against a target sequence.
    Search {
        /// Plant a target from "index:count,..." (requires --k).
        #[arg(long, requires = "k")]
        plant: Option<String>,
        /// Level for the planted instance.
        #[arg(long)]
        k: Option<u64>,
        /// Explicit target, comma-separated magnitudes.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long = "same-class")]
        same_class: bool,
        #[arg(long, requires = "same_class")]
        r: Option<usize>,
        #[arg(long, requires = "same_class")]
        n: Option<usize>,
        #[arg(long, num_args = 1.., requires = "same_class")]
        d: Vec<u64>,
        #[arg(long, default_value = "1")]
        h: String,
        #[arg(long = "max-m", default_value_t = 8)]
        max_m: u64,
        /// Defaults to --max-m.
        #[arg(long = "max-width")]
        max_width: Option<usize>,
        #[arg(long = "budget-ms", default_value_t = 60_000)]
        budget_ms: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::AllIntegers)]
        mode: ModeArg,
    },
    /// Run the inequality battery at chosen points; exit 0 iff every
    /// requested verdict holds.
    VerifyAppendix {
        /// Codimensions: "2", "2..3" or "2,3,5".
        #[arg(long)]
        r: String,
        /// Dimensions, same syntax; required unless --thresholds.
        #[arg(long)]
        n: Option<String>,
        /// Use n = 10r² + 1000 per r (the equal-degree regime).
        #[arg(long)]
        thresholds: bool,
        /// With --thresholds, use n = 10r⁴ + 1000 instead.
        #[arg(long, requires = "thresholds")]
        quartic: bool,
        /// Restrict to one named check.
        #[arg(long)]
        only: Option<String>,
        /// Degrees (default: all 1).
        #[arg(long, num_args = 1..)]
        d: Vec<u64>,
        #[arg(long, default_value = "1")]
        h: String,
    },
    /// Run the battery over a grid and record the verdict mixture
    /// (exit 0 on completion regardless of outcomes).
    Sweep {
        #[arg(long)]
        r: String,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        thresholds: bool,
        #[arg(long, requires = "thresholds")]
        quartic: bool,
        #[arg(long)]
        only: Option<String>,
        #[arg(long, num_args = 1..)]
        d: Vec<u64>,
        #[arg(long, default_value = "1")]
        h: String,
    },
    /// Cross-route property suite with deterministic, seed-stable logs.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Test fixture: force a named suite to fail.
        #[arg(long = "inject-fault", hide = true)]
        inject_fault: Option<String>,
    },
}

fn main() {
    unsafe {
        libc::signal(libc::SIGINT, on_sigint as *const () as libc::sighandler_t);
    }
    let cli = Cli::parse();
    if let Some(threads) = cli
        .threads
        .or_else(|| std::env::var("EULERIAN_CHI_THREADS").ok()?.parse().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let code = match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err.downcast_ref::<Error>() {
                Some(Error::NonIntegralChi { .. })
                | Some(Error::NonIntegralValue(_))
                | Some(Error::ChiSumMismatch { .. }) => EXIT_DATA,
                Some(_) => EXIT_USAGE,
                None => EXIT_USAGE,
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Eulerian { r, n, k } => cmd_eulerian(cli, *r, *n, *k),
        Command::Chi {
            profile,
            same_class,
            r,
            n,
            d,
            h,
            validate_rr,
        } => cmd_chi(
            cli,
            profile.as_deref(),
            *same_class,
            *r,
            *n,
            d,
            h,
            *validate_rr,
        ),
        Command::Numcond {
            profile,
            same_class,
            r,
            n,
            d,
            h,
            values,
        } => cmd_numcond(
            cli,
            profile.as_deref(),
            *same_class,
            *r,
            *n,
            d,
            h,
            values.as_deref(),
        ),
        Command::Search {
            plant,
            k,
            target,
            profile,
            same_class,
            r,
            n,
            d,
            h,
            max_m,
            max_width,
            budget_ms,
            mode,
        } => {
            let source = TargetSource {
                plant: plant.as_deref(),
                k: *k,
                target: target.as_deref(),
                profile: profile.as_deref(),
                same_class: *same_class,
                r: *r,
                n: *n,
                d,
                h,
            };
            cmd_search(cli, &source, *max_m, *max_width, *budget_ms, (*mode).into())
        }
        Command::VerifyAppendix {
            r,
            n,
            thresholds,
            quartic,
            only,
            d,
            h,
        } => cmd_verdicts(
            cli,
            r,
            n.as_deref(),
            *thresholds,
            *quartic,
            only.as_deref(),
            d,
            h,
            true,
        ),
        Command::Sweep {
            r,
            n,
            thresholds,
            quartic,
            only,
            d,
            h,
        } => cmd_verdicts(
            cli,
            r,
            n.as_deref(),
            *thresholds,
            *quartic,
            only.as_deref(),
            d,
            h,
            false,
        ),
        Command::Selftest { seed, inject_fault } => {
            cmd_selftest(cli, *seed, inject_fault.as_deref())
        }
    }
}

fn emit(cli: &Cli, text: String) -> anyhow::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- eulerian

#[derive(Serialize)]
struct EulerianReport {
    r: usize,
    n: usize,
    k: Option<usize>,
    values: Vec<String>,
}

fn cmd_eulerian(cli: &Cli, r: usize, n: usize, k: Option<usize>) -> anyhow::Result<i32> {
    if r == 0 {
        anyhow::bail!(Error::InvalidArgument("order r must be positive".into()));
    }
    let values: Vec<String> = match k {
        Some(k) => vec![generalized_eulerian(r, n as i64, k as i64).to_string()],
        None => {
            if n < r {
                anyhow::bail!(Error::InvalidArgument(format!(
                    "row needs n >= r, got r = {r}, n = {n}"
                )));
            }
            generalized_eulerian_row(r, n)
                .iter()
                .map(|v| v.to_string())
                .collect()
        }
    };
    let report = EulerianReport { r, n, k, values };
    let text = match cli.format {
        Format::Json => to_json(&report),
        Format::Plain => format!("{}\n", report.values.join(" ")),
        Format::Csv => format!("{}\n", report.values.join(",")),
    };
    emit(cli, text)?;
    Ok(0)
}

// -------------------------------------------------------------------- chi

#[derive(Serialize)]
struct ChiReport {
    n: usize,
    r: usize,
    source: String,
    values: Vec<String>,
    numcond: bool,
    /// Present only when the divisibility hypothesis r < n/2 applies.
    div6: Option<bool>,
}

fn parse_h(h: &str) -> anyhow::Result<BigInt> {
    h.parse::<BigInt>()
        .map_err(|_| Error::InvalidArgument(format!("bad decimal value for h: {h:?}")).into())
}

fn degree_profile(
    r: Option<usize>,
    n: Option<usize>,
    d: &[u64],
    h: &str,
) -> anyhow::Result<DegreeProfile> {
    let n = n.ok_or_else(|| Error::InvalidArgument("--n is required with --same-class".into()))?;
    let degrees = if d.is_empty() {
        let r = r.ok_or_else(|| {
            Error::InvalidArgument("--same-class needs --r or an explicit --d list".into())
        })?;
        vec![1; r]
    } else {
        if let Some(r) = r {
            if r != d.len() {
                anyhow::bail!(Error::InvalidArgument(format!(
                    "--r {r} does not match {} degrees",
                    d.len()
                )));
            }
        }
        d.to_vec()
    };
    Ok(DegreeProfile::new(n, degrees, parse_h(h)?)?)
}

#[allow(clippy::too_many_arguments)]
fn cmd_chi(
    cli: &Cli,
    profile: Option<&std::path::Path>,
    same_class: bool,
    r: Option<usize>,
    n: Option<usize>,
    d: &[u64],
    h: &str,
    validate_rr: bool,
) -> anyhow::Result<i32> {
    let (chi, source, div6) = if let Some(path) = profile {
        let text = std::fs::read_to_string(path)?;
        let profile = IntersectionProfile::from_json_str(&text)?;
        if validate_rr {
            profile.validate_riemann_roch()?;
        }
        let chi = chi_from_profile(&profile)?;
        let div6 = if 2 * profile.r() < profile.n() {
            Some(divisible_by_six(&profile)?)
        } else {
            None
        };
        (chi, "profile".to_string(), div6)
    } else if same_class {
        let dp = degree_profile(r, n, d, h)?;
        let chi = chi_same_class(&dp);
        // |χ_top| = Σ_q |χ_q|, so divisibility needs no profile pass.
        let div6 = if 2 * dp.r() < dp.n {
            let total: BigInt = chi.values().iter().sum();
            Some((total % BigInt::from(6)) == BigInt::from(0))
        } else {
            None
        };
        (chi, "same-class".to_string(), div6)
    } else {
        anyhow::bail!(Error::InvalidArgument(
            "chi needs --profile FILE or --same-class".into()
        ));
    };
    let numcond = numerical_condition(&chi);
    let report = ChiReport {
        n: chi.n(),
        r: chi.r(),
        source,
        values: chi.decimal_strings(),
        numcond,
        div6,
    };
    let text = match cli.format {
        Format::Json => to_json(&report),
        Format::Csv => format!("{}\n", report.values.join(",")),
        Format::Plain => {
            let mut line = format!("{}; numcond: {}", report.values.join(" "), report.numcond);
            if let Some(flag) = report.div6 {
                line.push_str(&format!("; div6: {flag}"));
            }
            line.push('\n');
            line
        }
    };
    emit(cli, text)?;
    Ok(0)
}

// ---------------------------------------------------------------- numcond

#[derive(Serialize)]
struct NumcondReport {
    values: Vec<String>,
    numcond: bool,
}

fn parse_values(text: &str) -> anyhow::Result<Vec<BigInt>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidArgument(format!("bad decimal value {part:?}")).into())
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_numcond(
    cli: &Cli,
    profile: Option<&std::path::Path>,
    same_class: bool,
    r: Option<usize>,
    n: Option<usize>,
    d: &[u64],
    h: &str,
    values: Option<&str>,
) -> anyhow::Result<i32> {
    let chi = if let Some(path) = profile {
        let text = std::fs::read_to_string(path)?;
        chi_from_profile(&IntersectionProfile::from_json_str(&text)?)?
    } else if same_class {
        chi_same_class(&degree_profile(r, n, d, h)?)
    } else if let Some(text) = values {
        let magnitudes = parse_values(text)?;
        if magnitudes.is_empty() {
            anyhow::bail!(Error::InvalidArgument("empty value list".into()));
        }
        let dim = magnitudes.len() - 1;
        ChiSequence::from_magnitudes(dim + 1, 1, magnitudes)?
    } else {
        anyhow::bail!(Error::InvalidArgument(
            "numcond needs --profile, --same-class or --values".into()
        ));
    };
    let report = NumcondReport {
        values: chi.decimal_strings(),
        numcond: numerical_condition(&chi),
    };
    let text = match cli.format {
        Format::Json => to_json(&report),
        _ => format!("numcond: {}\n", report.numcond),
    };
    emit(cli, text)?;
    Ok(if report.numcond {
        0
    } else {
        EXIT_VERDICT_FAILED
    })
}

// ----------------------------------------------------------------- search

struct TargetSource<'a> {
    plant: Option<&'a str>,
    k: Option<u64>,
    target: Option<&'a str>,
    profile: Option<&'a std::path::Path>,
    same_class: bool,
    r: Option<usize>,
    n: Option<usize>,
    d: &'a [u64],
    h: &'a str,
}

#[derive(Serialize)]
struct IndexFunctionJson {
    offset: i64,
    counts: Vec<u64>,
}

#[derive(Serialize)]
struct SolutionJson {
    #[serde(rename = "m_H")]
    m_h: IndexFunctionJson,
    k: u64,
    s: i64,
    mirror_group: usize,
}

#[derive(Serialize)]
struct BoundsJson {
    max_total_m: u64,
    max_support_width: usize,
    time_budget_ms: u64,
}

#[derive(Serialize)]
struct SearchReportJson {
    target: Vec<String>,
    mode: String,
    bounds: BoundsJson,
    solutions: Vec<SolutionJson>,
    exhausted: bool,
    interrupted: bool,
    elapsed_ms: u64,
}

fn parse_index_function(text: &str) -> anyhow::Result<IndexFunction> {
    let mut pairs = Vec::new();
    for part in text.split(',') {
        let (idx, count) = part.split_once(':').ok_or_else(|| {
            Error::InvalidArgument(format!("bad index:count pair {part:?} in {text:?}"))
        })?;
        let idx: i64 = idx
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad index {idx:?} in {text:?}")))?;
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad count {count:?} in {text:?}")))?;
        pairs.push((idx, count));
    }
    Ok(IndexFunction::from_pairs(&pairs)?)
}

fn build_instance(source: &TargetSource, mode: SearchMode) -> anyhow::Result<SystemInstance> {
    if let Some(plant) = source.plant {
        let m_h = parse_index_function(plant)?;
        let k = source.k.expect("clap enforces --k with --plant");
        let (sys, _) = eulerian_chi::wedge::plant_instance(&m_h, k, mode)?;
        Ok(sys)
    } else if let Some(text) = source.target {
        Ok(SystemInstance::new(parse_values(text)?, mode)?)
    } else if let Some(path) = source.profile {
        let text = std::fs::read_to_string(path)?;
        let chi = chi_from_profile(&IntersectionProfile::from_json_str(&text)?)?;
        Ok(SystemInstance::from_chi(&chi, mode))
    } else if source.same_class {
        let dp = degree_profile(source.r, source.n, source.d, source.h)?;
        Ok(SystemInstance::from_chi(&chi_same_class(&dp), mode))
    } else {
        anyhow::bail!(Error::InvalidArgument(
            "search needs --plant, --target, --profile or --same-class".into()
        ))
    }
}

fn cmd_search(
    cli: &Cli,
    source: &TargetSource,
    max_m: u64,
    max_width: Option<usize>,
    budget_ms: u64,
    mode: SearchMode,
) -> anyhow::Result<i32> {
    let sys = build_instance(source, mode)?;
    let bounds = SearchBounds {
        max_total_m: max_m,
        max_support_width: max_width.unwrap_or(max_m as usize),
        time_budget: Duration::from_millis(budget_ms),
    };
    let report = search_with_cancel(&sys, &bounds, &CANCEL);
    let json = search_report_json(&sys, &bounds, &report);
    let text = match cli.format {
        Format::Json => to_json(&json),
        Format::Csv => anyhow::bail!(Error::InvalidArgument(
            "csv output is not defined for search reports".into()
        )),
        Format::Plain => {
            let mut lines = vec![
                format!("target: {}", json.target.join(" ")),
                format!("mode: {}", json.mode),
                format!("solutions: {}", json.solutions.len()),
            ];
            for s in &json.solutions {
                lines.push(format!(
                    "  m_H offset {} counts {:?}; k {}; s {}; mirror-group {}",
                    s.m_h.offset, s.m_h.counts, s.k, s.s, s.mirror_group
                ));
            }
            lines.push(format!(
                "exhausted: {}; interrupted: {}",
                json.exhausted, json.interrupted
            ));
            format!("{}\n", lines.join("\n"))
        }
    };
    emit(cli, text)?;
    if report.interrupted || !report.exhausted {
        Ok(EXIT_BUDGET)
    } else {
        Ok(0)
    }
}

fn search_report_json(
    sys: &SystemInstance,
    bounds: &SearchBounds,
    report: &SearchReport,
) -> SearchReportJson {
    SearchReportJson {
        target: sys.target().iter().map(|v| v.to_string()).collect(),
        mode: sys.mode().label().to_string(),
        bounds: BoundsJson {
            max_total_m: bounds.max_total_m,
            max_support_width: bounds.max_support_width,
            time_budget_ms: bounds.time_budget.as_millis() as u64,
        },
        solutions: report
            .solutions
            .iter()
            .map(|s| SolutionJson {
                m_h: IndexFunctionJson {
                    offset: s.candidate.m_h.offset(),
                    counts: s.candidate.m_h.counts().to_vec(),
                },
                k: s.candidate.k,
                s: s.candidate.s,
                mirror_group: s.mirror_group,
            })
            .collect(),
        exhausted: report.exhausted,
        interrupted: report.interrupted,
        elapsed_ms: report.elapsed.as_millis() as u64,
    }
}

// --------------------------------------------------- verify-appendix/sweep

#[derive(Serialize)]
struct VerdictJson {
    name: String,
    params: std::collections::BTreeMap<String, String>,
    outcome: VerdictOutcome,
    holds: bool,
    conservative: bool,
    witness: Option<String>,
}

fn rational_string(v: &BigRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn parse_spec_list(text: &str, what: &str) -> anyhow::Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad {what} range start {lo:?}")))?;
            let hi: usize = hi
                .trim_start_matches('=')
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad {what} range end {hi:?}")))?;
            if hi < lo {
                anyhow::bail!(Error::InvalidArgument(format!(
                    "empty {what} range {part:?}"
                )));
            }
            out.extend(lo..=hi);
        } else {
            out.push(
                part.parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad {what} value {part:?}")))?,
            );
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verdicts(
    cli: &Cli,
    r_spec: &str,
    n_spec: Option<&str>,
    thresholds: bool,
    quartic: bool,
    only: Option<&str>,
    d: &[u64],
    h: &str,
    gate_on_holds: bool,
) -> anyhow::Result<i32> {
    let rs = parse_spec_list(r_spec, "r")?;
    let h = parse_h(h)?;
    let mut points = Vec::new();
    for &r in &rs {
        if r == 0 {
            anyhow::bail!(Error::InvalidArgument("r must be positive".into()));
        }
        let ns: Vec<usize> = if thresholds {
            let n = if quartic {
                10 * r.pow(4) + 1000
            } else {
                10 * r * r + 1000
            };
            vec![n]
        } else {
            match n_spec {
                Some(spec) => parse_spec_list(spec, "n")?,
                None => anyhow::bail!(Error::InvalidArgument(
                    "--n is required unless --thresholds is given".into()
                )),
            }
        };
        let degrees = if d.is_empty() { vec![1; r] } else { d.to_vec() };
        if degrees.len() != r {
            anyhow::bail!(Error::InvalidArgument(format!(
                "{} degrees given for r = {r}",
                degrees.len()
            )));
        }
        for n in ns {
            if n < r {
                anyhow::bail!(Error::InvalidArgument(format!(
                    "grid point needs n >= r, got r = {r}, n = {n}"
                )));
            }
            points.push(SweepPoint {
                r,
                n,
                degrees: degrees.clone(),
                h: h.clone(),
            });
        }
    }
    let only_list: Option<Vec<String>> = match only {
        None => None,
        Some(name) => {
            if !CHECK_NAMES.contains(&name) {
                anyhow::bail!(Error::InvalidArgument(format!(
                    "unknown check {name:?}; known: {}",
                    CHECK_NAMES.join(", ")
                )));
            }
            Some(vec![name.to_string()])
        }
    };
    let verdicts = sweep(&points, only_list.as_deref());
    let all_hold = verdicts.iter().all(IneqVerdict::holds);

    let text = match cli.format {
        Format::Json => {
            let rows: Vec<VerdictJson> = verdicts.iter().map(verdict_json).collect();
            to_json(&rows)
        }
        Format::Csv => {
            let mut out = String::from("name,r,n,profile,holds,conservative\n");
            for v in &verdicts {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    v.name,
                    v.params.get("r").map(String::as_str).unwrap_or(""),
                    v.params.get("n").map(String::as_str).unwrap_or(""),
                    v.params.get("profile").map(String::as_str).unwrap_or(""),
                    v.holds(),
                    v.conservative
                ));
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for v in &verdicts {
                let mut extras = String::new();
                if let Some(s) = v.params.get("s") {
                    extras = format!(" s={s}");
                }
                out.push_str(&format!(
                    "{} r={} n={}{}: {}\n",
                    v.name,
                    v.params.get("r").map(String::as_str).unwrap_or(""),
                    v.params.get("n").map(String::as_str).unwrap_or(""),
                    extras,
                    match v.outcome {
                        VerdictOutcome::Holds => "holds",
                        VerdictOutcome::Fails => "FAILS",
                        VerdictOutcome::Inconclusive => "inconclusive",
                        VerdictOutcome::HypothesisNotMet => "hypothesis-not-met",
                    }
                ));
            }
            out
        }
    };
    emit(cli, text)?;
    if gate_on_holds && !all_hold {
        Ok(EXIT_VERDICT_FAILED)
    } else {
        Ok(0)
    }
}

fn verdict_json(v: &IneqVerdict) -> VerdictJson {
    VerdictJson {
        name: v.name.clone(),
        params: v.params.clone(),
        outcome: v.outcome,
        holds: v.holds(),
        conservative: v.conservative,
        witness: v.witness.as_ref().map(rational_string),
    }
}

// --------------------------------------------------------------- selftest

#[derive(Serialize)]
struct SelftestJson {
    seed: u64,
    passed: bool,
    lines: Vec<String>,
}

fn cmd_selftest(cli: &Cli, seed: u64, inject_fault: Option<&str>) -> anyhow::Result<i32> {
    let fault = match inject_fault {
        None => None,
        Some(name) => Some(
            selftest::Fault::parse(name)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown fault {name:?}")))?,
        ),
    };
    let report = selftest::run(&selftest::SelftestOptions { seed, fault });
    let text = match cli.format {
        Format::Json => to_json(&SelftestJson {
            seed: report.seed,
            passed: report.passed,
            lines: report.lines.clone(),
        }),
        _ => format!(
            "{}\nselftest: {} (seed {})\n",
            report.lines.join("\n"),
            if report.passed { "PASS" } else { "FAIL" },
            report.seed
        ),
    };
    emit(cli, text)?;
    Ok(if report.passed {
        0
    } else {
        EXIT_VERDICT_FAILED
    })
}
