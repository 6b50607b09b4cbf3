mod args;
mod commands;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Artifact;
use error::CliError;

fn run(cli: &Cli) -> Result<Vec<Artifact>, CliError> {
    match &cli.command {
        Command::SimulateQuantum(c) => commands::simulate_quantum(c),
        Command::SimulateClassical(c) => commands::simulate_classical(c),
        Command::ClosedForm(c) => commands::closed_form(c),
        Command::Classify(c) => commands::classify_setup(c),
        Command::VarianceScan(c) => commands::variance_scan(c),
        Command::LimitDensity(c) => commands::limit_density(c),
    }
}

fn emit(artifacts: Vec<Artifact>) -> Result<(), CliError> {
    for a in artifacts {
        match a.path {
            Some(path) => std::fs::write(&path, a.body).map_err(|source| CliError::Io { path, source })?,
            None => std::io::stdout()
                .write_all(a.body.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?,
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(emit) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
