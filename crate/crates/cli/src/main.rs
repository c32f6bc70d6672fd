//! `wreathkit`: batch frontend over the wreathkit library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 infeasible or unsupported request.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{Options, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "wreathkit", version, about = "Random irreducible representations of wreath products G≀S_q")]
struct Cli {
    /// JSON run configuration; flags given on the command line take precedence.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    #[command(flatten)]
    options: Options,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Profile, transition measure, moments, free cumulants and p̃ of a diagram.
    Diagram {
        /// Partition literal such as "4,3,1"; the empty string is ∅.
        partition: Option<String>,
    },
    /// Character table and Plancherel weights of a group.
    Group,
    /// Canonical measure of a family at one q.
    Family,
    /// Exact family moments E tr ρ_q(φ(t)) of Σ-tensors.
    Moments,
    /// Exact and scaled cumulants at the given q values.
    Cumulants,
    /// Convergence of one scaled cumulant along a q grid.
    Limits,
    /// Monte Carlo fluctuation statistics for an Example-1 family.
    Sample,
    /// Brute-force oracle suites.
    Verify,
    /// Convergence reports for several quantities, with verdicts.
    Report,
}

/// Failure modes of a run, each with its exit code.
#[derive(Debug)]
pub enum Failure {
    Library(wreathkit::Error),
    Usage(String),
    /// The report has already been written.
    Verification,
}

impl From<wreathkit::Error> for Failure {
    fn from(e: wreathkit::Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("csv error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("json error: {e}"))
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        use wreathkit::Error as E;
        match self {
            Failure::Verification => 1,
            Failure::Usage(_) => 2,
            Failure::Library(e) => match e {
                E::Verification(_) | E::InvalidGroup(_) => 1,
                E::InvalidInput(_) | E::SizeMismatch { .. } | E::Interlacing(_) | E::Json(_) => 2,
                E::Infeasible(_) | E::Unsupported(_) | E::SingularSystem { .. } => 3,
            },
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let (command, options) = file.merge(cli.command, cli.options)?;
    if let Some(n) = options.workers {
        if n == 0 {
            return Err(Failure::Usage("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start {n} workers: {e}")))?;
    }
    commands::dispatch(&command, &options)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Library(e) => eprintln!("error: {e}"),
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Verification => eprintln!("verification failed"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
