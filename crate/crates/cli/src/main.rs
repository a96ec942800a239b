//! `grm` — command-line front end for generalized Reed-Muller code
//! parameters, second weights, hyperplane-arrangement searches,
//! Groebner/footprint runs, lemma minimization and verification sweeps.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid input
//! or parse error, 3 enumeration budget exceeded, 4 completion iteration
//! cap exceeded. Data goes to stdout (or `--out`), diagnostics and timing
//! to stderr. Identical inputs and seed produce byte-identical output.

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;
mod verify;

use report::OutputFormat;

#[derive(Parser)]
#[command(name = "grm", version, about = "Generalized Reed-Muller code toolkit")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for data payloads.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write the data payload to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Enumeration budget: the largest grid q^n any exhaustive scan may
    /// visit.
    #[arg(long, global = true, default_value_t = grm_core::DEFAULT_BUDGET)]
    budget: u64,

    /// Seed for the sampling suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Code parameters and second weight of RM_q(d, n).
    Params(ParamsArgs),
    /// Hyperplane-arrangement point counts, searches and checks.
    Arrangements(ArrangementsArgs),
    /// Groebner basis, footprint and rational points of a polynomial file.
    Groebner(GroebnerArgs),
    /// Zero counts and weights of the polynomials in a file.
    Poly(PolyArgs),
    /// Brute-force and closed-form minimum of the weight-gap objective.
    Lemma(LemmaArgs),
    /// Verification sweeps comparing closed forms against oracles.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct ParamsArgs {
    #[arg(short)]
    q: u32,
    #[arg(short)]
    n: u32,
    #[arg(short)]
    d: u32,
}

#[derive(Args)]
pub struct ArrangementsArgs {
    #[arg(short)]
    q: u32,
    #[arg(short)]
    n: u32,
    #[arg(short)]
    d: Option<u32>,
    /// Comma-separated block sizes; reports the point count of this type.
    #[arg(long, value_delimiter = ',')]
    blocks: Option<Vec<u32>>,
    /// Search for the best non-maximal type at degree d.
    #[arg(long)]
    search: bool,
    /// Check the point-count formula against the grid for every type.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
pub struct GroebnerArgs {
    /// Input file: one polynomial per line, '#' comments.
    input: std::path::PathBuf,
    #[arg(short)]
    q: u32,
    #[arg(short)]
    n: usize,
    #[arg(long, value_enum)]
    action: GroebnerAction,
    /// Cap on S-polynomial reductions during completion.
    #[arg(long, default_value_t = grm_core::groebner::DEFAULT_ITERATION_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GroebnerAction {
    /// Inter-reduced Groebner basis (field equations appended).
    Basis,
    /// Footprint size plus the rational-point cross-check.
    Footprint,
    /// Rational points of the input system.
    Points,
}

#[derive(Args)]
pub struct PolyArgs {
    /// Input file: one polynomial per line, '#' comments.
    input: std::path::PathBuf,
    #[arg(short)]
    q: u32,
    #[arg(short)]
    n: usize,
}

#[derive(Args)]
pub struct LemmaArgs {
    #[arg(short)]
    q: u32,
    #[arg(short)]
    n: u32,
    #[arg(short)]
    d: u32,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Cardinalities to sweep (defaults depend on the suite).
    #[arg(long = "q", value_delimiter = ',')]
    q_set: Option<Vec<u32>>,
    /// Variable counts to sweep.
    #[arg(long = "n", value_delimiter = ',')]
    n_set: Option<Vec<u32>>,
    /// Explicit degree list (default: all valid degrees per cell).
    #[arg(long = "d", value_delimiter = ',')]
    d_set: Option<Vec<u32>>,
    /// Sample count for the sampling suite.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Append one synthetic failing check (failure-path fixture).
    #[arg(long, hide = true)]
    inject_failure: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma,
    Arrangements,
    Dimension,
    Footprint,
    Sampling,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Lemma => "lemma",
            Suite::Arrangements => "arrangements",
            Suite::Dimension => "dimension",
            Suite::Footprint => "footprint",
            Suite::Sampling => "sampling",
            Suite::All => "all",
        };
        write!(f, "{name}")
    }
}

/// Error carrying the process exit code.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn budget(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    fn iteration_cap(message: impl Into<String>) -> Self {
        CliError {
            code: 4,
            message: message.into(),
        }
    }

    fn failed_checks(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    let result = match &cli.command {
        Command::Params(args) => commands::params(&cli, args),
        Command::Arrangements(args) => commands::arrangements(&cli, args),
        Command::Groebner(args) => commands::groebner(&cli, args),
        Command::Poly(args) => commands::poly(&cli, args),
        Command::Lemma(args) => commands::lemma(&cli, args),
        Command::Verify(args) => verify::run(&cli, args),
    };
    let elapsed = started.elapsed();
    eprintln!("grm: finished in {} ms", elapsed.as_millis());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("grm: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
