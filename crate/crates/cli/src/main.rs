use std::panic;
use std::process::ExitCode;

use clap::Parser;
use privres_cli::{run, Cli, EXIT_INTERNAL};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(lines)) => {
            for line in lines {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(e.exit_code())
        }
        // the panic hook has already printed the message
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}
