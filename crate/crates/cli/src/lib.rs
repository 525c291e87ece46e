//! Experiment runner for multiplicative Hankel forms.
//!
//! Each subcommand runs one experiment and produces a [`Report`]: the resolved
//! config, a table of rows, and pass/fail verdicts against the tolerances in
//! the config.

pub mod args;
pub mod experiments;
pub mod random;
pub mod report;

use std::time::Instant;

use anyhow::Result;

pub use args::{Cli, Command};
pub use report::{Outcome, Report, Row, Verdict};

/// Runs one experiment. `Replay` is resolved by the caller.
pub fn run(command: &Command) -> Result<report::Outcomes> {
    match command {
        Command::Hilbert(a) => experiments::hilbert::run(a),
        Command::EmbedVerify(a) => experiments::embed::run(a),
        Command::PhiD(a) => experiments::phi_d::run(a),
        Command::SchattenEmbed(a) => experiments::schatten::run(a),
        Command::Schur(a) => experiments::schur::run(a),
        Command::Inequalities(a) => experiments::inequalities::run(a),
        Command::Nehari(a) => experiments::nehari::run(a),
        Command::Replay(_) => anyhow::bail!("replay has no experiment of its own"),
    }
}

/// Runs `command`, following a replay to the recorded config, and times it.
pub fn execute(command: Command, argv: Vec<String>) -> Result<Report> {
    let config = match command {
        Command::Replay(r) => {
            let mut config = report::read_config(&r.report)?;
            anyhow::ensure!(!matches!(config, Command::Replay(_)), "cannot replay a replay");
            let output = output_mut(&mut config);
            output.out = r.out;
            output.csv = None;
            config
        }
        other => other,
    };
    let start = Instant::now();
    let outcomes = run(&config)?;
    Ok(Report::new(config, argv, outcomes, start.elapsed().as_secs_f64()))
}

fn output_mut(command: &mut Command) -> &mut args::Output {
    match command {
        Command::Hilbert(a) => &mut a.output,
        Command::EmbedVerify(a) => &mut a.output,
        Command::PhiD(a) => &mut a.output,
        Command::SchattenEmbed(a) => &mut a.output,
        Command::Schur(a) => &mut a.output,
        Command::Inequalities(a) => &mut a.output,
        Command::Nehari(a) => &mut a.output,
        Command::Replay(_) => unreachable!("replay configs are rejected"),
    }
}

/// Writes the JSON report and the optional CSV table.
pub fn write_outputs(report: &Report) -> Result<()> {
    let output = report.config.output().cloned().unwrap_or_default();
    if let Some(csv) = &output.csv {
        report.write_csv(csv)?;
    }
    report.write_json(output.out.as_deref())
}
