//! Command-line front end: generate tuple families, verify membership,
//! tabulate qualities, check the symbolic identities and run small searches,
//! all with machine-readable outputs and a stable exit-code contract:
//! 0 success, 1 verification failure, 2 input error, 3 capacity/budget.

mod commands;
mod options;

use clap::Parser;
use options::Cli;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
