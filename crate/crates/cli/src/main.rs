use std::process::ExitCode;

use clap::Parser;
use mhankel_cli::{execute, write_outputs, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().collect();
    let report = match execute(cli.command, argv) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = write_outputs(&report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    for v in report.failed() {
        eprintln!("FAILED {}: {}", v.name, v.detail);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
