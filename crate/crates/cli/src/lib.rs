//! Command-line front end: recomputes the summary table, single thresholds and
//! resource scans, and runs the consistency checks.
//!
//! Exit codes: 0 success, 1 a computed value or check failed, 2 invalid
//! configuration or unwritable output.

pub mod args;
pub mod commands;
pub mod report;

use std::path::PathBuf;

use args::{Cli, Command, Format};
use octabound::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("cannot write output: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
        }
    }

    pub fn context(self, what: &str) -> Self {
        match self {
            CliError::Config(m) => CliError::Config(format!("{what}: {m}")),
            CliError::Solver(m) => CliError::Solver(format!("{what}: {m}")),
            CliError::Io(m) => CliError::Io(format!("{what}: {m}")),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotMonotone { .. } | Error::NoThreshold { .. } | Error::RootCount { .. } | Error::Circuit(_) => {
                CliError::Solver(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

/// Rendered output of one invocation.
pub struct Rendered {
    pub text: String,
    pub out: Option<PathBuf>,
    pub passed: bool,
}

pub fn run(cli: &Cli) -> Result<Rendered, CliError> {
    let (output, opts) = match &cli.command {
        Command::Table(a) => (commands::table()?, &a.output),
        Command::Threshold(a) => (commands::threshold(a)?, &a.output),
        Command::Scan(a) => (commands::scan(a, a.output.format == Format::Csv)?, &a.output),
        Command::Verify(a) => (commands::verify(a)?, &a.output),
    };
    Ok(Rendered {
        text: report::render(&output.records, opts.format, &output.preamble),
        out: opts.out.clone(),
        passed: output.passed,
    })
}

/// Writes `rendered` to its destination.
pub fn emit(rendered: &Rendered) -> Result<(), CliError> {
    use std::io::Write;
    match &rendered.out {
        Some(path) => std::fs::write(path, &rendered.text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(rendered.text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}
