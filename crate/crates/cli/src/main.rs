//! `walsh-lab`: verification suites, parameter sweeps and transform benchmarks.

mod args;
mod bench;
mod output;
mod sweep;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use walsh_lab::verify::{self, Suite};

/// Exit status for bad flags, schema violations and out-of-range inputs.
const EXIT_CONFIG: u8 = 2;
/// Exit status for failed checks and I/O failures.
const EXIT_FAILURE: u8 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Walsh(#[from] walsh_lab::WalshError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Walsh(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_FAILURE,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("walsh-lab: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Config("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    match cli.command {
        Command::Verify(a) => run_verify(&a.suite, a.seed),
        Command::Sweep(a) => sweep::run(&a).map(|()| 0),
        Command::Bench(a) => bench::run(&a).map(|()| 0),
    }
}

fn run_verify(name: &str, seed: u64) -> Result<u8, CliError> {
    let suites = Suite::parse(name).ok_or_else(|| {
        CliError::Config(format!("unknown suite {name:?} (all, core, metrics, multiplier, opnorm, spectral)"))
    })?;
    let mut report = format!("# seed={seed}\n");
    let mut failures = 0;
    let mut total = 0;
    for suite in suites {
        for check in verify::run(suite, seed) {
            total += 1;
            let verdict = if check.passed { "pass" } else { "fail" };
            if !check.passed {
                failures += 1;
            }
            report.push_str(&format!("[{}] {}: {verdict} ({})\n", check.suite, check.name, check.detail));
        }
    }
    report.push_str(&format!("{} of {total} checks passed\n", total - failures));
    output::emit(None, &report)?;
    Ok(if failures == 0 { 0 } else { EXIT_FAILURE })
}
