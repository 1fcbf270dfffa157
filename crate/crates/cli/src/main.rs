mod args;
mod commands;
mod error;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;
use error::CliError;

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Algebra(a) => commands::algebra(a, cli.seed),
        Command::Mu(a) => commands::mu(a, cli.seed),
        Command::Family(a) => commands::family(a),
        Command::Tree(a) => commands::tree(a),
        Command::Fixture(a) => commands::fixture(a),
    }
}

fn emit(cli: &Cli, report: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize to JSON");
    text.push('\n');
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::validation("IoError", e.to_string())),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!(
        "{}",
        serde_json::to_string(e).expect("errors serialize to JSON")
    );
    ExitCode::from(e.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(&cli, &outcome.report) {
        return fail(&e);
    }
    match &outcome.failure {
        Some(e) => fail(e),
        None => ExitCode::SUCCESS,
    }
}
