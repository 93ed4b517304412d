use std::process::ExitCode;

use clap::Parser;
use sepalpha::study::{execute, StudyArgs, StudyConfig};

fn main() -> ExitCode {
    let args = StudyArgs::parse();
    match StudyConfig::from_args(args).and_then(|cfg| execute(&cfg)) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
