//! Thin binary shell: parse, dispatch, map the outcome to an exit status.
//!
//! Exit codes: 0 on success, 2 when a command ran but an audit target or
//! replay check failed, 1 on usage and I/O errors.

use std::process::exit;

use clap::error::ErrorKind;
use clap::Parser;

use coreset_cli::{run, ExperimentConfig, Outcome};

fn main() {
    let config = match ExperimentConfig::try_parse() {
        Ok(config) => config,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                exit(0);
            }
            eprint!("{e}");
            exit(1);
        }
    };
    match run(&config) {
        Ok(Outcome::Success) => {}
        Ok(Outcome::AuditFailed) => {
            eprintln!("audit failed: a checked target did not hold (see the report)");
            exit(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit(1);
        }
    }
}
