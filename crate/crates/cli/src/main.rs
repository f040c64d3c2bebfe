use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Bounds and verification for the two-agent CEO problem with an eavesdropper.
#[derive(Parser, Debug)]
#[command(name = "ceo-leakage", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum distortion as a function of the first leakage rate (CSV).
    GaussianCurve(GaussianCurveArgs),
    /// Membership of one (R1, R2, L1, L2, D) tuple in the Gaussian region (JSON).
    GaussianMember(GaussianMemberArgs),
    /// Inner and outer constraint sets of a discrete model file (JSON or table).
    DiscreteEval(DiscreteEvalArgs),
    /// The ten outer-bound extreme points and their dominance check (CSV).
    ExtremePoints(ExtremePointsArgs),
    /// Gap between the equivocation-based bounds under log-loss (JSON).
    Counterexample(CounterexampleArgs),
    /// Run the seeded verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Logloss,
    Quadratic,
}

impl From<MetricArg> for ceo_leakage::Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Logloss => ceo_leakage::Metric::LogLoss,
            MetricArg::Quadratic => ceo_leakage::Metric::Quadratic,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Grid points per axis of the auxiliary-rate search.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Upper end of the auxiliary-rate box (default: finite rates + headroom).
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Bits added to the finite rates when deriving the box.
    #[arg(long, default_value_t = 4.0)]
    pub headroom: f64,
    /// Stopping width of the line searches.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone)]
pub struct VarianceArgs {
    /// Source variance. Required unless `--table1`; an override for `verify`.
    #[arg(long = "sigma-x2")]
    pub sigma_x2: Option<f64>,
    /// Noise variance at agent 1.
    #[arg(long = "sigma-n1")]
    pub sigma_n1: Option<f64>,
    /// Noise variance at agent 2.
    #[arg(long = "sigma-n2")]
    pub sigma_n2: Option<f64>,
}

#[derive(Args, Debug)]
pub struct GaussianCurveArgs {
    #[command(flatten)]
    pub variances: VarianceArgs,
    #[arg(long)]
    pub r1: Option<f64>,
    #[arg(long)]
    pub r2: Option<f64>,
    /// Second leakage rate; omitted means unconstrained.
    #[arg(long)]
    pub l2: Option<f64>,
    #[arg(long, value_enum, default_value_t = MetricArg::Logloss)]
    pub metric: MetricArg,
    /// `start:stop:step`, inclusive.
    #[arg(long, default_value = "0:3:0.05")]
    pub l1_grid: String,
    /// Emit the four reference configurations; `--out` is then a directory.
    #[arg(long)]
    pub table1: bool,
    /// Output file (directory with `--table1`); stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct GaussianMemberArgs {
    #[command(flatten)]
    pub variances: VarianceArgs,
    #[arg(long)]
    pub r1: f64,
    #[arg(long)]
    pub r2: f64,
    /// Accepts `inf`.
    #[arg(long)]
    pub l1: f64,
    /// Accepts `inf`.
    #[arg(long, default_value_t = f64::INFINITY)]
    pub l2: f64,
    #[arg(long)]
    pub d: f64,
    #[arg(long, value_enum, default_value_t = MetricArg::Logloss)]
    pub metric: MetricArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
pub struct DiscreteEvalArgs {
    /// Model file (`"schema": 1`).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExtremePointsArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Evaluate with `Z` and the `V` layer removed instead of rejecting them.
    #[arg(long)]
    pub ignore_side_information: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CounterexampleArgs {
    /// Model file; only its `U` layer is used. Defaults to the binary
    /// symmetric source with `Ũ_k = Y_k`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Crossover of both observation channels for the built-in instance.
    #[arg(long, default_value_t = 0.1, conflicts_with = "input")]
    pub crossover: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Seed of the random instances; equal seeds give identical reports.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random instances per discrete check.
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    /// Comma-separated subset of: xi-zero, dominance, inner-in-outer,
    /// saturation, counterexample, coincidence.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Model file checked alongside the random instances.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub variances: VarianceArgs,
    /// Tolerance used when locating the saturation point of a curve.
    #[arg(long, default_value_t = 1e-6)]
    pub saturation_tol: f64,
    /// Write the full summary as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

/// How a command ended, mapped onto the process exit code.
pub enum Failure {
    /// Exit 1: the computation ran but a check failed.
    Verification(String),
    /// Exit 2: bad arguments or input files.
    Input(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

pub const THREADS_ENV: &str = "CEO_LEAKAGE_THREADS";

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("{THREADS_ENV} must be a positive integer, got '{v}'"))?;
        if n == 0 {
            anyhow::bail!("{THREADS_ENV} must be a positive integer, got 0");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads()
        .map_err(Failure::Input)
        .and_then(|()| match cli.command {
            Command::GaussianCurve(a) => commands::gaussian_curve(a),
            Command::GaussianMember(a) => commands::gaussian_member(a),
            Command::DiscreteEval(a) => commands::discrete_eval(a),
            Command::ExtremePoints(a) => commands::extreme_points(a),
            Command::Counterexample(a) => commands::counterexample(a),
            Command::Verify(a) => commands::verify(a),
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
