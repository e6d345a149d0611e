use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};
use hypersphere_laplace::oracles::Method;

#[derive(Debug, Parser)]
#[command(
    name = "hyperlaplace",
    version,
    about = "Laplace transforms on hyperspheres: saddle tables, oracle comparisons, regime reports"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ln D_n for a hypersphere of given radius and weight samples f
    Eval(EvalArgs),
    /// Saddle quantities gamma, ln L, sigma over a lambda grid
    Table(TableArgs),
    /// The critical point where L(lambda) = 1
    Critical(OutArgs),
    /// ln F_n(lambda) from a single method
    Oracle(OracleArgs),
    /// All methods side by side with their maximum pairwise deviation
    Compare(CompareArgs),
    /// Regime classification, or unit crossings lambda_n when --n is given
    Regime(RegimeArgs),
    /// (ln D_n)/n along a radius schedule next to ln Psi_theta(f)
    Ensemble(EnsembleArgs),
    /// SVG curves of lambda(gamma) and L(lambda)
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub grid_min: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub grid_max: f64,
    #[arg(long, default_value_t = 200)]
    pub grid_count: usize,
    /// Log-spaced (true) or linearly spaced (false) points
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub grid_log: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MethodArgs {
    /// Absolute tolerance for the quadrature method
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Sample count for the Monte Carlo method
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Comma-separated positive samples of f; their count is the dimension
    #[arg(long, value_delimiter = ',', required = true)]
    pub f: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub radius: f64,
    #[arg(long, default_value = "contour")]
    pub method: Method,
    #[command(flatten)]
    pub method_args: MethodArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: usize,
    /// Single lambda; without it the grid is used
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, default_value = "contour")]
    pub method: Method,
    #[command(flatten)]
    pub method_args: MethodArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub n: usize,
    /// Single lambda; without it the grid is used
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[command(flatten)]
    pub method_args: MethodArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct RegimeArgs {
    /// Single lambda_eff; without it (and without --n) the grid is used
    #[arg(long, conflicts_with = "n", allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Half-width of the critical band around ln L = 0
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
    /// Comma-separated dimensions: report unit crossings lambda_n instead
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    /// Comma-separated positive samples of f on a unit-measure domain
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub f: Vec<f64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// r_n = c * n^alpha
    #[arg(long, required_unless_present = "pinned", allow_negative_numbers = true)]
    pub radius_c: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub radius_alpha: f64,
    /// Use r_n = lambda_cr / rho(f) instead of c * n^alpha
    #[arg(long, conflicts_with_all = ["radius_c", "radius_alpha"])]
    pub pinned: bool,
    #[arg(long, value_delimiter = ',', default_value = "5,10,20,40")]
    pub n: Vec<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Table CSV (lambda,gamma,ln_L,sigma); computed from the grid when absent
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutArgs,
}
