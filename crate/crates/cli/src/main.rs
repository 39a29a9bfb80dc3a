mod args;
mod commands;
mod render;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, RunConfig};

/// Bad or missing input data, including unreadable files.
const EXIT_DATA: u8 = 3;
/// The numerics failed: no convergence, ill-conditioned extrapolation.
const EXIT_NUMERICAL: u8 = 4;
/// Output could not be written.
const EXIT_OUTPUT: u8 = 5;

#[derive(Debug)]
pub enum CliError {
    Core(tfcorr::Error),
    DataFile(String, tfcorr::Error),
    MissingAtom(String),
    /// Every requested row failed; the first failure decides the exit code.
    AllRowsFailed(Box<CliError>),
    NoAtoms,
    Output(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::DataFile(path, e) => write!(f, "{path}: {e}"),
            CliError::AllRowsFailed(_) => write!(f, "no row could be computed"),
            CliError::MissingAtom(key) => write!(f, "no record for `{key}` in the atomic data"),
            CliError::NoAtoms => write!(f, "the atomic data holds no atoms"),
            CliError::Output(e) => write!(f, "cannot write output: {e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::DataFile(_, e) if e.is_numerical() => EXIT_NUMERICAL,
            CliError::AllRowsFailed(first) => first.exit_code(),
            CliError::Output(_) => EXIT_OUTPUT,
            _ => EXIT_DATA,
        }
    }
}

impl From<tfcorr::Error> for CliError {
    fn from(e: tfcorr::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig::from(&cli.common);
    let result = match &cli.command {
        Command::Table1 => commands::table1(&cfg),
        Command::Model(a) => commands::model(&cfg, a),
        Command::Figures(a) => commands::figures(&cfg, a),
        Command::Asymptotics(a) => commands::asymptotics(&cfg, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
