use std::process::ExitCode;

use clap::Parser;
use hocauchy_cli::{dispatch, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            let code = err.exit_code() as u8;
            match err {
                CliError::Verification(report) => {
                    print!("{report}");
                    eprintln!("verification failed");
                }
                CliError::Usage(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(code)
        }
    }
}
