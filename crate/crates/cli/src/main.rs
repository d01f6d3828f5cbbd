//! `quasirank` command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when a check is falsified, 2 on a configuration error.

mod config;
mod scan;
mod series;
mod table;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, Params};

pub(crate) const THREADS_ENV: &str = "QUASIRANK_THREADS";

#[derive(Debug)]
pub(crate) enum CliError {
    Config(String),
    Compute(quasirank::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<quasirank::Error> for CliError {
    fn from(e: quasirank::Error) -> Self {
        match e {
            // bad arguments reaching the library are configuration problems too
            quasirank::Error::InvalidArgument(m) => CliError::Config(m),
            e => CliError::Compute(e),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "quasirank",
    version,
    about = "Exact partition statistics, rank and crank moments, congruence checks"
)]
struct Cli {
    /// key=value file mirroring the flags; flags given here win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a statistic: p, N, M, D, NF, Nj, Mj, eta
    Table {
        stat: String,
        #[command(flatten)]
        params: Params,
    },
    /// Build a moment series: crank, rank, eta, y, r2k, twisted-rank, twisted-crank, twisted-r2, t2
    Series {
        kind: String,
        #[command(flatten)]
        params: Params,
    },
    /// Run an identity suite: pde, rankcrank, recurrence, pk, theorem3, dissection, rootidentity, congruences, witness, all
    Verify {
        suite: String,
        #[command(flatten)]
        params: Params,
    },
    /// Search progressions A n + B on which a statistic is divisible by l^j
    Scan {
        #[arg(long)]
        stat: String,
        #[command(flatten)]
        params: Params,
    },
}

pub(crate) fn set_threads(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Config("thread count must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

/// Writes `body` to `--output` or stdout.
pub(crate) fn emit(params: &Params, body: &str) -> Result<(), CliError> {
    match &params.output {
        Some(path) => {
            fs::write(path, body).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Config(e.to_string()))
        }
    }
}

pub(crate) fn format_or(params: &Params, default: Format) -> Format {
    params.format.unwrap_or(default)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n = v
            .parse()
            .map_err(|_| CliError::Config(format!("{THREADS_ENV}={v} is not a count")))?;
        set_threads(n)?;
    }
    let cfg = cli.config.as_deref();
    match cli.command {
        Command::Table { stat, params } => {
            table::run(&stat, &params.merge_file(cfg)?).map(|_| true)
        }
        Command::Series { kind, params } => {
            series::run(&kind, &params.merge_file(cfg)?).map(|_| true)
        }
        Command::Verify { suite, params } => verify::run(&suite, &params.merge_file(cfg)?),
        Command::Scan { stat, params } => scan::run(&stat, &params.merge_file(cfg)?).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ CliError::Config(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
