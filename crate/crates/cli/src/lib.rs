//! `hypermoment` command line: limiting moments, the enumeration oracle,
//! Monte Carlo runs, correlator decay, and a three-way comparison.

pub mod commands;
pub mod error;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypermoment_sim::EdgeSampler;

pub use commands::{cmd_compare, cmd_correlators, cmd_moments, cmd_oracle, cmd_simulate};
pub use error::{CliError, Result};
pub use report::{CompareReport, CorrelatorsReport, MomentsReport, OracleReport, Rat, SimulateReport};

/// Environment variable consulted for the default `--seed`.
pub const SEED_ENV: &str = "HYPERMOMENT_SEED";

#[derive(Debug, Parser)]
#[command(name = "hypermoment", version, about = "Spectral moments of sparse random weighted hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Limiting moments m_0..m_kmax from the splitting recurrence.
    Moments(ExactArgs),
    /// Limiting moments by walk-class enumeration, checked against the recurrence.
    Oracle(OracleArgs),
    /// Monte Carlo trace moments of sampled adjacency matrices.
    Simulate(SimulateArgs),
    /// Correlator decay over a grid of sizes.
    Correlators(CorrelatorArgs),
    /// Recurrence, oracle and Monte Carlo side by side.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerArg {
    Auto,
    Bernoulli,
    Binomial,
}

impl From<SamplerArg> for EdgeSampler {
    fn from(s: SamplerArg) -> Self {
        match s {
            SamplerArg::Auto => EdgeSampler::Auto,
            SamplerArg::Bernoulli => EdgeSampler::Bernoulli,
            SamplerArg::Binomial => EdgeSampler::Binomial,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ExactArgs {
    /// Hyperedge size.
    #[arg(long, default_value_t = 3)]
    pub q: usize,
    /// Sparsity: each q-subset is present with probability p / N^(q-1).
    /// Integer, decimal or a/b.
    #[arg(long, default_value = "1")]
    pub p: String,
    /// Weight law: const:c, sign, twopoint:a,b,pi or gauss:sigma.
    #[arg(long, default_value = "sign")]
    pub dist: String,
    /// Explicit weight moments X_1,X_2,... overriding those of --dist for the
    /// exact computations.
    #[arg(long, value_name = "X1,X2,...")]
    pub x: Option<String>,
    /// Highest moment order.
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CapArgs {
    /// Raise the enumeration cap (default 6) to this k. Enumeration cost
    /// grows super-exponentially in k.
    #[arg(long, value_name = "K")]
    pub unsafe_cap: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub exact: ExactArgs,
    #[command(flatten)]
    pub cap: CapArgs,
    /// Write the essential walk classes for every k <= kmax as JSON lines.
    #[arg(long, value_name = "PATH")]
    pub dump_classes: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MonteCarloArgs {
    /// Number of trials.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Master seed; trial i uses stream i of a generator keyed by it.
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core). Does not affect results.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = SamplerArg::Auto)]
    pub sampler: SamplerArg,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub exact: ExactArgs,
    /// Number of vertices.
    #[arg(long = "n", visible_alias = "N", default_value_t = 200)]
    pub n: usize,
    #[command(flatten)]
    pub mc: MonteCarloArgs,
    /// Also write the trial-averaged eigenvalue histogram here, as two
    /// columns (bin center, mass).
    #[arg(long, value_name = "PATH")]
    pub histogram: Option<PathBuf>,
    #[arg(long, default_value_t = 60)]
    pub bins: usize,
    /// Histogram range as lo:hi (default: symmetric, covering every eigenvalue).
    #[arg(long, value_name = "LO:HI")]
    pub hist_range: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CorrelatorArgs {
    #[command(flatten)]
    pub exact: ExactArgs,
    /// Sizes to run, at least four.
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
    pub n_grid: Vec<usize>,
    /// Moment pairs k:m.
    #[arg(long, value_delimiter = ',', default_value = "2:2")]
    pub pairs: Vec<String>,
    #[command(flatten)]
    pub mc: MonteCarloArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub exact: ExactArgs,
    #[arg(long = "n", visible_alias = "N", default_value_t = 200)]
    pub n: usize,
    #[command(flatten)]
    pub mc: MonteCarloArgs,
    #[command(flatten)]
    pub cap: CapArgs,
}

/// A rendered report and the exit code it implies.
pub struct Rendered {
    pub body: String,
    pub code: u8,
}

/// Runs one subcommand, writes its report, and returns the exit code.
pub fn run(cli: &Cli) -> Result<u8> {
    let (rendered, exact) = match &cli.command {
        Command::Moments(a) => (cmd_moments(a)?.render(a.format)?, a),
        Command::Oracle(a) => (commands::render_oracle(a)?, &a.exact),
        Command::Simulate(a) => (commands::render_simulate(a)?, &a.exact),
        Command::Correlators(a) => (commands::render_correlators(a)?, &a.exact),
        Command::Compare(a) => (commands::render_compare(a)?, &a.exact),
    };
    match &exact.output {
        Some(path) => fs::write(path, &rendered.body)?,
        None => std::io::stdout().lock().write_all(rendered.body.as_bytes())?,
    }
    Ok(rendered.code)
}
