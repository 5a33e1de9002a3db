use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use qcag_cli::{run, Cli, EXIT_MISMATCH};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.out.is_none() || matches!(cli.command, qcag_cli::Command::Build) {
                let _ = std::io::stdout().write_all(out.text.as_bytes());
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH as u8)
            }
        }
        Err(e) => {
            eprintln!("qcag: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
