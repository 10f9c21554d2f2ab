use std::process::ExitCode;

use clap::Parser;
use octabound_cli::args::Cli;
use octabound_cli::{emit, run};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|r| emit(&r).map(|()| r.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("octabound: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
