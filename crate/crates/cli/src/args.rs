use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fracdiff", version, about = "Time-fractional diffusion on the half-line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the Wright function W(z; rho, beta) for z <= 0.
    #[command(allow_negative_numbers = true)]
    Wright(WrightArgs),
    /// Evaluate the Mainardi function M_nu(x) for x >= 0.
    Mainardi(MainardiArgs),
    /// Evaluate the closed-form solution of a problem file on its grid.
    Solve(SolveArgs),
    /// Run the finite-difference reference solver on a problem file.
    Oracle(OracleArgs),
    /// Distance to the classical solution for a list of orders.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Run the property suite and print a pass/fail table.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompareWith {
    HeatLimit,
    Oracle,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write data here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("{v} is not a positive finite number")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct WrightArgs {
    #[arg(long)]
    pub rho: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub z: f64,
    #[arg(long, value_parser = positive, default_value_t = 1e-12)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct MainardiArgs {
    #[arg(long)]
    pub nu: f64,
    #[arg(long)]
    pub x: f64,
    #[arg(long, value_parser = positive, default_value_t = 1e-12)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub problem: PathBuf,
    /// Replace the order given in the problem file.
    #[arg(long)]
    pub alpha_override: Option<f64>,
    /// Emit the error report against a reference instead of the field.
    #[arg(long, value_enum)]
    pub compare: Option<CompareWith>,
    /// Exit with status 1 if the reported L-infinity distance exceeds this.
    #[arg(long, value_parser = positive, requires = "compare")]
    pub max_linf: Option<f64>,
    #[arg(long, value_parser = positive, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub problem: PathBuf,
    /// Spatial intervals; overrides the problem file.
    #[arg(long)]
    pub nx: Option<usize>,
    /// Time steps; overrides the problem file.
    #[arg(long)]
    pub nt: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub problem: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "0.9,0.99,0.999")]
    pub alphas: Vec<f64>,
    #[arg(long, value_parser = positive, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Problem whose data drive the solver properties.
    #[arg(long)]
    pub problem: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = positive, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub output: Output,
}
