use std::process::ExitCode;

use clap::Parser;
use isork_cli::{execute, Cli, SEED_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = std::env::var(SEED_ENV).ok();
    match execute(&cli, seed.as_deref()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("isork: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
