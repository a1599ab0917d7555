use std::process::ExitCode;

use clap::Parser;
use gaussmix_cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gaussmix: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
