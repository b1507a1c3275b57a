//! `primelab`: deterministic number-theory tables and convergence
//! experiments on the command line.
//!
//! Exit codes: 0 success (including ADVISORY verdicts), 1 an experiment ran
//! and its verdict is FAIL, 2 usage or domain errors, 3 output I/O errors.

mod config;
mod output;
mod run;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match config::Cli::try_parse() {
        Ok(cli) => cli,
        // Clap renders its own message and exits 0 for --help/--version,
        // 2 for usage errors.
        Err(e) => e.exit(),
    };
    match run::run(cli) {
        Ok(run::Completion::Clean) => ExitCode::from(0),
        Ok(run::Completion::FailedVerdict) => ExitCode::from(1),
        Err(run::RunError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(run::RunError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
