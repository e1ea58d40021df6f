use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::GaussInt;

mod artifact;
mod commands;
mod config;
mod verify;

/// Quadratic Hecke L-functions over the Gaussian integers.
///
/// Exit status: 0 success, 1 verification failure, 2 usage error,
/// 3 resource or numerical failure.
#[derive(Debug, Parser)]
#[command(name = "hecke", version, max_term_width = 100)]
pub struct Cli {
    /// `key = value` file with numerical settings; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads (default: all available cores).
    #[arg(long, global = true, env = "HECKE_JOBS")]
    jobs: Option<usize>,

    /// Seed for every randomised sample.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scan every odd square-free d up to a norm for real zeros of L(σ, χ) on (0, 1].
    Survey(SurveyArgs),
    /// Scan a single d and print its record.
    Zeros(ZerosArgs),
    /// Evaluate L and the completed function ξ on the real axis.
    Lfun(LfunArgs),
    /// Compare the closed form and the direct sum of g(r, n).
    GaussSum(GaussSumArgs),
    /// Count the family up to a norm without scanning any L-function.
    Density(DensityArgs),
    /// Compute the headline constant C and its error estimate.
    Constant(ConstantArgs),
    /// Compare the empirical mollified second moment with its main term.
    Moments(MomentsArgs),
    /// Run the property suites and emit a JSON report.
    Verify(VerifyArgs),
    /// Write numeric tables for external plotting.
    PlotData(PlotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Primary,
    AllAssociates,
}

impl From<Mode> for hecke_core::gaussian::EnumerationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Primary => Self::Primary,
            Mode::AllAssociates => Self::AllAssociates,
        }
    }
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    #[arg(long)]
    max_norm: u64,
    #[arg(long, value_enum, default_value = "primary")]
    mode: Mode,
    /// CSV output; provenance goes to `<FILE>.meta.json`.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Resume from and update this checkpoint.
    #[arg(long, value_name = "FILE", requires = "out")]
    checkpoint: Option<PathBuf>,
    /// Count d = ±1, ±i in the summary (their rows are written regardless).
    #[arg(long)]
    include_units: bool,
    #[arg(long)]
    grid_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    /// Odd square-free Gaussian integer, e.g. `-1+2i`.
    #[arg(long, allow_hyphen_values = true)]
    d: GaussInt,
    #[arg(long)]
    grid_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LfunArgs {
    #[arg(long, allow_hyphen_values = true)]
    d: GaussInt,
    /// A single abscissa.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "grid",
        required_unless_present = "grid"
    )]
    sigma: Option<f64>,
    /// Evaluate at σ = j/k for j = 0..=k.
    #[arg(long, value_name = "K")]
    grid: Option<usize>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GaussSumArgs {
    #[arg(long, allow_hyphen_values = true)]
    r: GaussInt,
    #[arg(long, allow_hyphen_values = true)]
    n: GaussInt,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long)]
    max_norm: u64,
    #[arg(long, value_enum, default_value = "all-associates")]
    mode: Mode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PrefactorArg {
    /// `e^{−u}/ρ`.
    MainTerm,
    /// `e^{−u}/(2ρ)`.
    Halved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GradientArg {
    /// Divide the `P″` term by `u + iv`.
    UPlusIv,
    /// Divide by `x + iv` with `x` the inner variable.
    XPlusIv,
}

#[derive(Debug, Args)]
pub struct ConstantArgs {
    #[arg(long, default_value_t = 0.64)]
    b: f64,
    #[arg(long = "R", default_value_t = 6.8)]
    r: f64,
    /// Defaults to π/(2(1−b)(1−20κ)).
    #[arg(long = "S")]
    s: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    kappa: f64,
    #[arg(long, value_enum, default_value = "main-term")]
    prefactor: PrefactorArg,
    #[arg(long, value_enum, default_value = "u-plus-iv")]
    gradient: GradientArg,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long = "X")]
    x: f64,
    /// Shift as `re,im`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
    delta1: (f64, f64),
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: verify::Suite,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    /// `(σ, ξ(σ))` on a uniform grid over [0, 1].
    XiProfile,
    /// `(x, W(x))` for the central kernel, log-spaced.
    KernelProfile,
    /// Cumulative nonvanishing fraction against norm.
    ProportionCurve,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, value_enum)]
    kind: PlotKind,
    /// Character for `xi-profile`.
    #[arg(long, allow_hyphen_values = true, default_value = "-3")]
    d: GaussInt,
    /// Rows for `xi-profile` and `kernel-profile`.
    #[arg(long)]
    rows: Option<usize>,
    /// Survey bound for `proportion-curve`.
    #[arg(long, default_value_t = 1000)]
    max_norm: u64,
    #[arg(long, value_enum, default_value = "primary")]
    mode: Mode,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Resource(String),
}

impl From<hecke_core::Error> for CliError {
    fn from(e: hecke_core::Error) -> Self {
        use hecke_core::Error as E;
        match e {
            E::InvalidParameter(_)
            | E::NotSquareFree(_)
            | E::EvenInput(..)
            | E::ZeroInput(_)
            | E::Pole(..) => CliError::Usage(e.to_string()),
            _ => CliError::Resource(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Usage(m) | CliError::Verification(m) | CliError::Resource(m)) = &e;
            eprintln!("hecke: {m}");
            ExitCode::from(e.exit_code())
        }
    }
}
