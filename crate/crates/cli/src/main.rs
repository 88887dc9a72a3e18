//! `vamat`: batch driver for the exact vertex-algebra computations.

mod commands;
mod config;
mod output;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] vamat_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Whether every gating check passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Passed
        } else {
            Outcome::Failed
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "vamat", version, about = "Exact computations with vertex algebras, their matrix algebras and graded modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: RunConfig,

    /// Directory to write artifacts into.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the vertex algebra axioms on the truncated mode table.
    Selftest,
    /// Multiply two matrices given as JSON files.
    Diamond { left: PathBuf, right: PathBuf },
    /// Canonical form of a matrix modulo the O-span.
    Reduce {
        matrix: PathBuf,
        /// Weights above the top of the matrix to include in the reduction.
        #[arg(long, default_value_t = 1)]
        margin: u32,
    },
    /// Quotient dimensions modulo the O-span and of V / C_2(V).
    Dims,
    /// Level-N products, centrality of the conformal vector and the
    /// polynomial probe.
    Zhu,
    /// Build the graded module and act on it.
    Act {
        /// Matrix to apply to every basis vector.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Run every suite and write a manifest.
    VerifyAll,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let cfg = &cli.config;
    match cli.command {
        Command::Selftest => commands::selftest(cfg, cli.out),
        Command::Diamond { left, right } => commands::diamond(cfg, cli.out, &left, &right),
        Command::Reduce { matrix, margin } => commands::reduce(cfg, cli.out, &matrix, margin),
        Command::Dims => commands::dims(cfg, cli.out),
        Command::Zhu => commands::zhu(cfg, cli.out),
        Command::Act { matrix } => commands::act(cfg, cli.out, matrix.as_deref()),
        Command::VerifyAll => verify::verify_all(cfg, cli.out.unwrap_or_else(|| PathBuf::from("vamat-artifacts"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
