//! `powprod`: verify order-statistic product identities, tabulate the
//! distributions behind them, simulate ranked-set sampling schemes, and test
//! samples for power-function goodness of fit.
//!
//! Exit codes: 0 success/consistent, 1 usage or input error, 2 numerical
//! failure, 3 identity/goodness-of-fit inconsistent.

mod json17;
mod manifest;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use manifest::RunManifest;
use output::atomic_write;
use powprod::{
    h_function, h_residual, parse_dist_spec, power_gof, verify_identity_mc,
    verify_identity_numeric, verify_maxima_chain, Error as CoreError, IdentityReport, McConfig,
    OrderStatisticLaw, QuadratureConfig, RssScheme, SamplePath, GENERATOR_VERSION,
};

const SEED_ENV: &str = "POWPROD_SEED";

#[derive(Parser)]
#[command(
    name = "powprod",
    version,
    about = "Products of order statistics and the power function distribution: \
             verification, tables, ranked set sampling, goodness of fit."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check X_{k:n} =d Y_{k:n-1} Z_{n:n} for a distribution, numerically or by Monte Carlo.
    Verify(VerifyArgs),
    /// Tabulate order-statistic CDF/PDF, the H function, or the H-residual as CSV.
    Table(TableArgs),
    /// Generate a ranked-set-sampling matrix (CSV plus manifest).
    Rss(RssArgs),
    /// Test a sample file for power-function goodness of fit (alpha-free).
    Gof(GofArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Quadrature sup-distance between the two CDFs on a grid.
    Numeric,
    /// Two-sample KS between sampled replicates of both sides.
    Mc,
    /// Two-sample KS against the sampled product of maxima X_{[k:k]}..X_{[n:n]}.
    Chain,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Numeric => "numeric",
            Mode::Mc => "mc",
            Mode::Chain => "chain",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Distribution spec: uniform | pow:<a> | par:<a> | expshape | sinshape | wiggle | file:<path>.
    #[arg(long)]
    dist: String,
    /// Rank k of X_{k:n}.
    #[arg(long)]
    k: usize,
    /// Sample size n.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Mode::Numeric)]
    mode: Mode,
    /// Grid points for numeric mode.
    #[arg(long, default_value_t = 101)]
    grid: usize,
    /// Replicates for mc/chain modes.
    #[arg(long = "N", visible_alias = "replicates", default_value_t = 100_000)]
    replicates: usize,
    /// Significance level for mc/chain modes.
    #[arg(long, default_value_t = 0.05)]
    level: f64,
    /// 64-bit seed; defaults to $POWPROD_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Stream id for independent runs under one seed.
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Absolute quadrature tolerance (numeric mode).
    #[arg(long = "abs-tol", default_value_t = 1e-10)]
    abs_tol: f64,
    /// Maximum quadrature bisection depth.
    #[arg(long = "max-depth", default_value_t = 60)]
    max_depth: u32,
    /// Write the JSON report here (stdout always gets a copy).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableWhat {
    Cdf,
    Pdf,
    H,
    Residual,
}

impl TableWhat {
    fn name(self) -> &'static str {
        match self {
            TableWhat::Cdf => "cdf",
            TableWhat::Pdf => "pdf",
            TableWhat::H => "h",
            TableWhat::Residual => "residual",
        }
    }
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    dist: String,
    /// What to tabulate: cdf/pdf of X_{k:n}, the H function, or the H-residual.
    #[arg(long, value_enum)]
    what: TableWhat,
    /// Rank k (required for cdf, pdf, residual).
    #[arg(long)]
    k: Option<usize>,
    /// Sample size n (required for cdf, pdf, residual).
    #[arg(long)]
    n: Option<usize>,
    /// Number of interior grid points x_j = j/(grid+1).
    #[arg(long, default_value_t = 101)]
    grid: usize,
    #[arg(long = "abs-tol", default_value_t = 1e-10)]
    abs_tol: f64,
    #[arg(long = "max-depth", default_value_t = 60)]
    max_depth: u32,
    /// Write the CSV here (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Standard,
    Maxima,
    Custom,
}

#[derive(Args)]
struct RssArgs {
    #[arg(long, default_value = "uniform")]
    dist: String,
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Set size.
    #[arg(long)]
    n: usize,
    /// Number of cycles (matrix rows).
    #[arg(long)]
    cycles: usize,
    /// Comma-separated ranks for the custom scheme, e.g. 1,2,2.
    #[arg(long)]
    ranks: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Draw-and-sort every set instead of the beta quantile transform.
    #[arg(long)]
    literal: bool,
    /// Output CSV path; the manifest lands at <out>.manifest.json.
    #[arg(long, default_value = "rss.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct GofArgs {
    /// Sample file: one decimal in (0, 1) per line, no header.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.05)]
    level: f64,
    /// Seed for the blocking shuffle.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::QuadratureNonConvergence { .. } | CoreError::ConvergenceFailure(_) => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numerical(format!("i/o failure: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Verify(a) => run_verify(a),
        Command::Table(a) => run_table(a),
        Command::Rss(a) => run_rss(a),
        Command::Gof(a) => run_gof(a),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!("{SEED_ENV} must be an unsigned 64-bit integer, got {v:?}"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(CliError::Usage(format!("{SEED_ENV}: {e}"))),
    }
}

/// JSON report wrapper: run provenance up front, identity fields flattened in.
#[derive(Serialize)]
struct ReportEnvelope<'a> {
    schema: u32,
    command: &'static str,
    dist: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    replicates: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stream: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator_version: Option<&'static str>,
    #[serde(flatten)]
    report: &'a IdentityReport,
}

fn emit_report(
    envelope: &ReportEnvelope<'_>,
    out: Option<&Path>,
    mut mf: RunManifest,
) -> Result<(), CliError> {
    let text = json17::to_string(envelope)
        .map_err(|e| CliError::Numerical(format!("report serialization: {e}")))?;
    print!("{text}");
    if let Some(path) = out {
        atomic_write(path, text.as_bytes())?;
        mf.outputs.push(path.display().to_string());
        mf.write_for(path)?;
    }
    Ok(())
}

fn verdict_exit(report: &IdentityReport) -> ExitCode {
    if report.is_consistent() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn run_verify(a: VerifyArgs) -> Result<ExitCode, CliError> {
    let base = parse_dist_spec(&a.dist)?;
    let seed = resolve_seed(a.seed)?;
    let q = QuadratureConfig {
        abs_tol: a.abs_tol,
        max_depth: a.max_depth,
        singularity_split: true,
    };
    let cfg = McConfig::new(a.replicates, seed, a.stream);
    let report = match a.mode {
        Mode::Numeric => verify_identity_numeric(base.as_ref(), a.k, a.n, a.grid, &q)?,
        Mode::Mc => verify_identity_mc(base.as_ref(), a.k, a.n, &cfg, a.level)?,
        Mode::Chain => verify_maxima_chain(base.as_ref(), a.k, a.n, &cfg, a.level)?,
    };

    let sampled = a.mode != Mode::Numeric;
    let envelope = ReportEnvelope {
        schema: 1,
        command: "verify",
        dist: base.label(),
        input: None,
        mode: Some(a.mode.name()),
        grid: (a.mode == Mode::Numeric).then_some(a.grid),
        abs_tol: (a.mode == Mode::Numeric).then_some(a.abs_tol),
        replicates: sampled.then_some(a.replicates),
        seed: sampled.then_some(seed),
        stream: sampled.then_some(a.stream),
        generator_version: sampled.then_some(GENERATOR_VERSION),
        report: &report,
    };

    let mut mf = RunManifest::new("verify");
    mf.seed = Some(seed);
    mf.stream = Some(a.stream);
    mf.param("dist", a.dist.clone())
        .param("k", a.k as u64)
        .param("n", a.n as u64)
        .param("mode", a.mode.name())
        .param("grid", a.grid as u64)
        .param("N", a.replicates as u64)
        .param("level", a.level)
        .param("abs_tol", a.abs_tol)
        .param("max_depth", a.max_depth as u64);
    emit_report(&envelope, a.out.as_deref(), mf)?;
    Ok(verdict_exit(&report))
}

fn run_table(a: TableArgs) -> Result<ExitCode, CliError> {
    let base = parse_dist_spec(&a.dist)?;
    if a.grid < 1 {
        return Err(CliError::Usage("grid must be at least 1".into()));
    }
    let q = QuadratureConfig {
        abs_tol: a.abs_tol,
        max_depth: a.max_depth,
        singularity_split: true,
    };
    let need_law = a.what != TableWhat::H;
    let (k, n) = if need_law {
        match (a.k, a.n) {
            (Some(k), Some(n)) => (k, n),
            _ => {
                return Err(CliError::Usage(format!(
                    "--what {} requires --k and --n",
                    a.what.name()
                )))
            }
        }
    } else {
        (0, 0)
    };

    let mut csv = String::from("x,value\n");
    for j in 1..=a.grid {
        let x = j as f64 / (a.grid + 1) as f64;
        let value = match a.what {
            TableWhat::Cdf => OrderStatisticLaw::new(k, n, base.as_ref())?.cdf(x)?,
            TableWhat::Pdf => OrderStatisticLaw::new(k, n, base.as_ref())?.pdf(x)?,
            TableWhat::H => h_function(base.as_ref(), x)?,
            TableWhat::Residual => h_residual(base.as_ref(), k, n, x, &q)?,
        };
        csv.push_str(&format!("{x},{value}\n"));
    }

    match &a.out {
        None => print!("{csv}"),
        Some(path) => {
            atomic_write(path, csv.as_bytes())?;
            let mut mf = RunManifest::new("table");
            mf.param("dist", a.dist.clone())
                .param("what", a.what.name())
                .param("grid", a.grid as u64)
                .param("abs_tol", a.abs_tol);
            if need_law {
                mf.param("k", k as u64).param("n", n as u64);
            }
            mf.outputs.push(path.display().to_string());
            mf.write_for(path)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_rss(a: RssArgs) -> Result<ExitCode, CliError> {
    let base = parse_dist_spec(&a.dist)?;
    let seed = resolve_seed(a.seed)?;
    let scheme = match a.scheme {
        SchemeArg::Standard => RssScheme::standard(a.n, a.cycles)?,
        SchemeArg::Maxima => RssScheme::maxima(a.n, a.cycles)?,
        SchemeArg::Custom => {
            let spec = a.ranks.as_deref().ok_or_else(|| {
                CliError::Usage("custom scheme requires --ranks, e.g. --ranks 1,2,2".into())
            })?;
            let ranks = spec
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("bad rank list {spec:?}")))?;
            RssScheme::custom(a.n, ranks, a.cycles)?
        }
    };
    let path = if a.literal {
        SamplePath::DrawAndSort
    } else {
        SamplePath::BetaTransform
    };
    let matrix = powprod::generate_rss(&scheme, base.as_ref(), &McConfig::new(0, seed, a.stream), path)?;

    let mut csv = scheme.column_labels().join(",");
    csv.push('\n');
    for c in 0..matrix.cycles() {
        for i in 0..matrix.rows() {
            if i > 0 {
                csv.push(',');
            }
            csv.push_str(&format!("{}", matrix.get(c, i)));
        }
        csv.push('\n');
    }
    atomic_write(&a.out, csv.as_bytes())?;

    let mut mf = RunManifest::new("rss");
    mf.seed = Some(seed);
    mf.stream = Some(a.stream);
    mf.param("dist", a.dist.clone())
        .param("scheme", scheme.kind_name())
        .param("n", a.n as u64)
        .param("cycles", a.cycles as u64)
        .param("literal", a.literal);
    if let Some(r) = &a.ranks {
        mf.param("ranks", r.clone());
    }
    mf.outputs.push(a.out.display().to_string());
    mf.write_for(&a.out)?;
    Ok(ExitCode::SUCCESS)
}

fn read_sample_file(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| {
            CliError::Usage(format!(
                "line {}: expected one decimal value, got {raw:?}",
                idx + 1
            ))
        })?;
        if !(v > 0.0 && v < 1.0) {
            return Err(CliError::Usage(format!(
                "line {}: value {v} outside (0, 1)",
                idx + 1
            )));
        }
        values.push(v);
    }
    Ok(values)
}

fn run_gof(a: GofArgs) -> Result<ExitCode, CliError> {
    let values = read_sample_file(&a.input)?;
    let seed = resolve_seed(a.seed)?;
    let cfg = McConfig::new(values.len(), seed, a.stream);
    let report = power_gof(&values, a.k, a.n, &cfg, a.level)?;

    let envelope = ReportEnvelope {
        schema: 1,
        command: "gof",
        dist: "power-family (alpha-free)".to_string(),
        input: Some(a.input.display().to_string()),
        mode: None,
        grid: None,
        abs_tol: None,
        replicates: Some(values.len()),
        seed: Some(seed),
        stream: Some(a.stream),
        generator_version: Some(GENERATOR_VERSION),
        report: &report,
    };
    let mut mf = RunManifest::new("gof");
    mf.seed = Some(seed);
    mf.stream = Some(a.stream);
    mf.param("input", a.input.display().to_string())
        .param("k", a.k as u64)
        .param("n", a.n as u64)
        .param("level", a.level);
    emit_report(&envelope, a.out.as_deref(), mf)?;
    Ok(verdict_exit(&report))
}
