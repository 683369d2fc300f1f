use std::process::ExitCode;

use clap::Parser;

use conewalk::{execute, Cli, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(Outcome::Success(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::VerifyFailed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
