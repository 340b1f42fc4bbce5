//! `filament-rng` command-line front end.
//!
//! Exit codes: 0 success, 1 a test or verification failed, 2 bad usage or
//! configuration.

use std::process::ExitCode;

use clap::Parser;

mod args;
mod gauss_cmd;
mod gen;
mod output;
mod stats_cmd;
mod verify;

use args::{Cli, Command};

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Invalid flags, inputs or configuration.
    Usage(String),
    /// The command ran and a check failed.
    Check(String),
}

impl From<filament_rng::Error> for Failure {
    fn from(e: filament_rng::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Gauss(a) => gauss_cmd::run(&a),
        Command::Stats(a) => stats_cmd::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("filament-rng: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("filament-rng: error: {msg}");
            ExitCode::from(2)
        }
    }
}
