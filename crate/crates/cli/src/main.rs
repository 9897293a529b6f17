//! `congruent` — command-line driver: one subcommand per operation, CSV or
//! JSON-lines output with a metadata header, atomic writes, and a verified
//! result cache.

mod cache;
mod output;
mod run;

use clap::error::ErrorKind;
use clap::Parser;

use crate::run::{Cli, RunError};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    match run::run(cli) {
        Ok(()) => {}
        Err(RunError::Validation(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(RunError::Budget(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}
