//! Experiment harness around the `setfam` library: instance generation,
//! tester runs, distances, sweeps and certificate checks.
//!
//! [`run`] executes a parsed command line in process and returns the bytes
//! the binary would print, so tests can compare outputs directly.

mod commands;
mod csvout;
pub mod source;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use setfam::hardness::{BadKind, InstanceKind};

pub use commands::sweep::PairShape;

/// Version string recorded in every output header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "setfam", version, about = "Testers and hard instances for union-closed and intersecting families")]
pub struct Cli {
    /// Master seed; per-run seeds are derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (0 lets rayon decide).
    #[arg(long, global = true, env = "SETFAM_THREADS")]
    pub threads: Option<usize>,

    /// Cap on enumerations inside testers and distance routines.
    #[arg(long, global = true)]
    pub cap: Option<u64>,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a hard instance and run its structural checks.
    Gen(GenArgs),
    /// Run testers and emit one CSV row per run.
    Test(TestArgs),
    /// Compute the distance of a function to a property.
    Dist(DistArgs),
    /// Run a parameter grid and emit CSV.
    Sweep(SweepArgs),
    /// Check certificates against a function.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_parser = parse_instance_kind)]
    pub kind: InstanceKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub eps: f64,
    /// Also write the truth table as BFTT1 (arity at most 24).
    #[arg(long)]
    pub bftt1: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// Testers to run: uc, int, uc-triple, int-pair.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alg: Vec<String>,
    /// Function: const0, const1, majority, dictator-K, ones:{..}, or a file.
    #[arg(long = "fn")]
    pub function: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Cap the number of iterations or rounds per run.
    #[arg(long)]
    pub max_iterations: Option<u64>,
    /// Constant in the per-round bound of the sampling testers.
    #[arg(long, default_value_t = 1.0)]
    pub tau_constant: f64,
    /// Add a wall-time column (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Prop {
    Int,
    Uc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistMethod {
    Exact,
    Bounds,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long, value_enum)]
    pub prop: Prop,
    #[arg(long = "fn")]
    pub function: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = DistMethod::Exact)]
    pub method: DistMethod,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Number of seeds per grid point, derived from the master seed.
    #[arg(long, global = true, default_value_t = 1)]
    pub seeds: u64,
    #[command(subcommand)]
    pub what: Sweep,
}

#[derive(Debug, Subcommand)]
pub enum Sweep {
    /// Per-iteration queries of a scanning tester against n, with a fit.
    Queries {
        #[arg(long, default_value = "uc")]
        alg: String,
        #[arg(long = "fn", default_value = "const1")]
        function: String,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 30)]
        max_iterations: u64,
    },
    /// Rejection rate of a tester against eps.
    Rejection {
        #[arg(long)]
        alg: String,
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        max_iterations: Option<u64>,
    },
    /// Probability that a point of the window satisfies exactly one term.
    UniqueSat {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Frequency of the bad event for pairs of queries.
    BadEvent {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = BadKindArg::Int)]
        kind: BadKindArg,
        #[arg(long, value_enum, default_value_t = PairShape::Antipodal)]
        pairs: PairShape,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BadKindArg {
    Int,
    Uc,
}

impl From<BadKindArg> for BadKind {
    fn from(k: BadKindArg) -> Self {
        match k {
            BadKindArg::Int => BadKind::Int,
            BadKindArg::Uc => BadKind::Uc,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "fn")]
    pub function: String,
    #[arg(long)]
    pub n: Option<usize>,
    /// A certificate as JSON.
    #[arg(long, conflicts_with = "csv", required_unless_present = "csv")]
    pub cert: Option<String>,
    /// A CSV produced by `test`; every certificate in it is checked.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn parse_instance_kind(s: &str) -> Result<InstanceKind, String> {
    s.parse().map_err(|e: setfam::Error| e.to_string())
}

/// What a command produced.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    /// Primary output: CSV or JSON.
    pub data: Vec<u8>,
    /// Human-readable status lines.
    pub notes: Vec<String>,
    /// Process exit code.
    pub code: i32,
}

/// Execute `cli` on a thread pool of the requested size.
pub fn run(cli: &Cli) -> Result<Output> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build()?;
    pool.install(|| match &cli.command {
        Command::Gen(a) => commands::gen::run(cli, a),
        Command::Test(a) => commands::test::run(cli, a),
        Command::Dist(a) => commands::dist::run(cli, a),
        Command::Sweep(a) => commands::sweep::run(cli, a),
        Command::Verify(a) => commands::verify::run(cli, a),
    })
}

/// Parse `args` (including the program name) and run.
pub fn run_args<I, T>(args: I) -> Result<Output>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run(&Cli::try_parse_from(args)?)
}
