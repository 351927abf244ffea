//! Command-line front end: `table`, `check` and `selftest`.
//!
//! Output goes to standard output unless `--out` is given. The exit status is
//! 0 when every check passes, 1 when a check fails and 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::exact::Rational;
use crate::families::{build_family, reduction_all_ones, FamilyId, FamilyTable, FAMILY_NAMES};
use crate::identities::{
    check_theorem, default_grid, run_suite, CheckReport, Theorem, DEFAULT_MAX_DEPTH,
    DEFAULT_MODULI, DEFAULT_N_MAX,
};
use crate::selftest::{self, SuiteResult};
use crate::stirling::MultiIndex;

/// Truncation order used when neither `--order` nor `POLYG_ORDER` is set.
pub const DEFAULT_ORDER: usize = 24;

#[derive(Debug, Parser)]
#[command(name = "polyg", version, about = "Exact multi-Euler-Genocchi tables and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print rows 0..=n_max of a family.
    Table(TableArgs),
    /// Verify identities against the generating functions.
    Check(CheckArgs),
    /// Run the default grid and every invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Largest row index.
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Truncation order N; rows above it are rejected.
    #[arg(long, env = "POLYG_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(FAMILY_NAMES))]
    family: String,
    /// Multi-index, e.g. `2,1` or `()`.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<MultiIndex>,
    /// Order r of gen-eg and gen-degen-eg.
    #[arg(long)]
    r: Option<usize>,
    /// `symbolic` or a rational value for x.
    #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
    x: Specialization,
    /// `symbolic` or a rational value for λ.
    #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
    lambda: Specialization,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// 2.1 to 2.6, `reductions`, or `all`.
    #[arg(long)]
    theorem: String,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<MultiIndex>,
    /// Depth for `reductions` when no multi-index is given.
    #[arg(long)]
    r: Option<usize>,
    /// Odd moduli for the distribution formula.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_MODULI.to_vec())]
    m: Vec<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of multi-indices sampled from the default grid.
    #[arg(long, default_value_t = 24)]
    samples: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A variable is either kept symbolic or fixed to a rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialization {
    Symbolic,
    Value(Rational),
}

impl Specialization {
    fn value(&self) -> Option<&Rational> {
        match self {
            Specialization::Symbolic => None,
            Specialization::Value(v) => Some(v),
        }
    }
}

impl FromStr for Specialization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "symbolic" {
            Ok(Specialization::Symbolic)
        } else {
            s.parse().map(Specialization::Value)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Table {
        family: FamilyId,
    },
    Check {
        theorems: Vec<Theorem>,
        k: MultiIndex,
    },
    Selftest {
        seed: u64,
        samples: usize,
    },
}

/// Validated command-line settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub command: CommandKind,
    pub n_max: usize,
    pub moduli: Vec<u32>,
    pub order: usize,
    pub x: Specialization,
    pub lambda: Specialization,
    pub format: Format,
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Engine(Error::Rejected(_) | Error::Parse { .. }) => 2,
            _ => 1,
        }
    }
}

/// Rendered output plus whether every check passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub success: bool,
}

impl CliConfig {
    /// Parses and validates arguments (the first item is the program name).
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        CliConfig::from_cli(cli).map_err(|e| {
            clap::Error::raw(clap::error::ErrorKind::ValueValidation, format!("{e}\n"))
        })
    }

    fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (command, common, x, lambda, moduli, default_n_max) = match cli.command {
            Command::Table(a) => {
                let family = FamilyId::from_parts(&a.family, a.r, a.k)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                (CommandKind::Table { family }, a.common, a.x, a.lambda, Vec::new(), 10)
            }
            Command::Check(a) => {
                let theorems = if a.theorem == "all" {
                    Theorem::ALL.to_vec()
                } else {
                    vec![Theorem::from_label(&a.theorem)
                        .map_err(|e| CliError::Usage(e.to_string()))?]
                };
                let k = match (a.k, a.r) {
                    (Some(k), _) => k,
                    (None, Some(r)) if theorems == [Theorem::Reductions] => MultiIndex::ones(r),
                    _ => return Err(CliError::Usage("check needs --k".to_string())),
                };
                let needs_theorem_depth = theorems.iter().any(|t| *t != Theorem::Reductions);
                if needs_theorem_depth && k.depth() == 0 {
                    return Err(CliError::Usage(
                        "theorems 2.1 to 2.6 need a nonempty multi-index".to_string(),
                    ));
                }
                if theorems.contains(&Theorem::Distribution) {
                    if let Some(m) = a.m.iter().find(|&&m| m == 0 || m % 2 == 0) {
                        return Err(CliError::Usage(format!(
                            "--m must be odd and positive for theorem 2.6, got {m}"
                        )));
                    }
                }
                let cmd = CommandKind::Check { theorems, k };
                let sym = Specialization::Symbolic;
                (cmd, a.common, sym.clone(), sym, a.m, 10)
            }
            Command::Selftest(a) => {
                let cmd = CommandKind::Selftest {
                    seed: a.seed,
                    samples: a.samples,
                };
                let sym = Specialization::Symbolic;
                (cmd, a.common, sym.clone(), sym, DEFAULT_MODULI.to_vec(), DEFAULT_N_MAX)
            }
        };
        let n_max = common.n_max.unwrap_or(default_n_max);
        if n_max > common.order {
            return Err(CliError::Usage(format!(
                "--n-max {n_max} exceeds the truncation order {}",
                common.order
            )));
        }
        Ok(CliConfig {
            command,
            n_max,
            moduli,
            order: common.order,
            x,
            lambda,
            format: common.format,
            out: common.out,
        })
    }
}

/// Runs a validated configuration and renders its output.
pub fn execute(cfg: &CliConfig) -> Result<Output, CliError> {
    match &cfg.command {
        CommandKind::Table { family } => cmd_table(cfg, family),
        CommandKind::Check { theorems, k } => cmd_check(cfg, theorems, k),
        CommandKind::Selftest { seed, samples } => cmd_selftest(cfg, *seed, *samples),
    }
}

fn cmd_table(cfg: &CliConfig, family: &FamilyId) -> Result<Output, CliError> {
    let table = build_family(family, cfg.n_max, cfg.n_max)?
        .specialize(cfg.x.value(), cfg.lambda.value());
    Ok(Output {
        body: render_table(&table, cfg.format)?,
        success: true,
    })
}

fn cmd_check(cfg: &CliConfig, theorems: &[Theorem], k: &MultiIndex) -> Result<Output, CliError> {
    let mut reports = Vec::new();
    if theorems.len() == Theorem::ALL.len() {
        reports = run_suite(std::slice::from_ref(k), cfg.n_max, &cfg.moduli)?;
        reports.push(reduction_all_ones(cfg.n_max, k.depth())?);
    } else {
        for &t in theorems {
            reports.extend(check_theorem(t, k, cfg.n_max, &cfg.moduli)?);
        }
    }
    Ok(Output {
        success: reports.iter().all(CheckReport::passed),
        body: render_reports(&reports, cfg.format)?,
    })
}

#[derive(Serialize)]
struct SelftestSummary<'a> {
    seed: u64,
    n_max: usize,
    samples: usize,
    suites: Vec<SuiteSummary<'a>>,
    failures: usize,
}

#[derive(Serialize)]
struct SuiteSummary<'a> {
    name: &'a str,
    checks: usize,
    failures: &'a [String],
}

fn cmd_selftest(cfg: &CliConfig, seed: u64, samples: usize) -> Result<Output, CliError> {
    let n_max = cfg.n_max;
    let sampled = selftest::sample_grid(&default_grid(), samples, seed);
    let random = selftest::random_indices(seed, 20, DEFAULT_MAX_DEPTH);
    let (theorems, _) = selftest::theorem_grid(&sampled, n_max, &cfg.moduli)?;
    let suites: Vec<SuiteResult> = vec![
        theorems,
        selftest::reductions(DEFAULT_MAX_DEPTH, n_max)?,
        selftest::li_cross_check(&random, 16),
        selftest::derivative_identity(&random, 16),
        selftest::all_ones_multi_stirling(10),
        selftest::stirling_inversion(12),
        selftest::degeneration(&sampled, DEFAULT_MAX_DEPTH, n_max)?,
        selftest::vanishing_and_degree(&sampled, n_max)?,
        selftest::genocchi_integrality(20)?,
        selftest::translation(&sampled, n_max.min(10))?,
    ];
    let failures: usize = suites.iter().map(|s| s.failures.len()).sum();
    let body = match cfg.format {
        Format::Json => {
            let summary = SelftestSummary {
                seed,
                n_max,
                samples: sampled.len(),
                suites: suites
                    .iter()
                    .map(|s| SuiteSummary {
                        name: s.name,
                        checks: s.checks,
                        failures: &s.failures,
                    })
                    .collect(),
                failures,
            };
            to_json(&summary)?
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "checks", "failures"]).map_err(csv_err)?;
            for s in &suites {
                w.write_record([s.name, &s.checks.to_string(), &s.failures.len().to_string()])
                    .map_err(csv_err)?;
            }
            csv_finish(w)?
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "selftest seed={seed} n_max={n_max} samples={}", sampled.len());
            for s in &suites {
                let _ = writeln!(
                    out,
                    "{:<24} {:>7} checks {:>4} failures",
                    s.name,
                    s.checks,
                    s.failures.len()
                );
                for f in &s.failures {
                    let _ = writeln!(out, "  FAIL {f}");
                }
            }
            let total: usize = suites.iter().map(|s| s.checks).sum();
            let _ = writeln!(out, "total {total} checks");
            let _ = writeln!(out, "{failures} failures");
            out
        }
    };
    Ok(Output {
        body,
        success: failures == 0,
    })
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    s.push('\n');
    Ok(s)
}

fn table_heading(table: &FamilyTable) -> String {
    let mut h = format!("{} n_max={}", table.id(), table.n_max());
    if let Some(x) = table.x_value() {
        let _ = write!(h, " x={x}");
    }
    if let Some(l) = table.lambda_value() {
        let _ = write!(h, " λ={l}");
    }
    h
}

/// Renders a family table. Text and CSV print each row as a polynomial in
/// descending powers of `x`; JSON uses the structured term lists.
pub fn render_table(table: &FamilyTable, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(table),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "value"]).map_err(csv_err)?;
            for (n, row) in table.rows().iter().enumerate() {
                w.write_record([n.to_string(), row.to_string()]).map_err(csv_err)?;
            }
            csv_finish(w)
        }
        Format::Text => {
            let width = table.n_max().to_string().len();
            let mut out = table_heading(table);
            out.push('\n');
            for (n, row) in table.rows().iter().enumerate() {
                let _ = writeln!(out, "{n:>width$}  {row}");
            }
            Ok(out)
        }
    }
}

fn report_heading(rep: &CheckReport) -> String {
    let mut h = format!("{} k={}", rep.theorem(), rep.index());
    if let Some(m) = rep.modulus() {
        let _ = write!(h, " m={m}");
    }
    let _ = write!(h, " n_max={}", rep.n_max());
    h
}

/// Renders check reports; failing records always carry both sides.
pub fn render_reports(reports: &[CheckReport], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["theorem", "k", "m", "n", "status", "lhs", "rhs"])
                .map_err(csv_err)?;
            for rep in reports {
                let m = rep.modulus().map(|m| m.to_string()).unwrap_or_default();
                for rec in rep.results() {
                    let side = |p: &Option<_>| {
                        p.as_ref()
                            .map(|b: &crate::exact::BiPoly| b.to_string())
                            .unwrap_or_default()
                    };
                    w.write_record([
                        rep.theorem().label().to_string(),
                        rep.index().to_string(),
                        m.clone(),
                        rec.n.to_string(),
                        if rec.passed() { "pass" } else { "fail" }.to_string(),
                        side(&rec.lhs),
                        side(&rec.rhs),
                    ])
                    .map_err(csv_err)?;
                }
            }
            csv_finish(w)
        }
        Format::Text => {
            let mut out = String::new();
            let mut failing = 0;
            for rep in reports {
                let total = rep.results().len();
                let bad: Vec<_> = rep.failures().collect();
                let status = if bad.is_empty() { "pass" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{}: {status} {}/{total}",
                    report_heading(rep),
                    total - bad.len()
                );
                for rec in &bad {
                    let show = |p: &Option<crate::exact::BiPoly>| {
                        p.as_ref().map(|b| b.to_string()).unwrap_or_default()
                    };
                    let _ = writeln!(out, "  n={}", rec.n);
                    let _ = writeln!(out, "    lhs: {}", show(&rec.lhs));
                    let _ = writeln!(out, "    rhs: {}", show(&rec.rhs));
                }
                failing += bad.len();
            }
            let _ = writeln!(out, "{} reports, {failing} failures", reports.len());
            Ok(out)
        }
    }
}

/// Entry point shared by the binary: parses, executes, writes output and
/// returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::from_args(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&cfg).and_then(|out| {
        match &cfg.out {
            Some(path) => std::fs::write(path, &out.body)?,
            None => print!("{}", out.body),
        }
        Ok(out.success)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
