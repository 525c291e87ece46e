use std::fs::File;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use mhankel::hankel::SpectralResult;
use mhankel::hardy::McEstimate;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Command;

pub const SCHEMA: u32 = 1;

/// Result part of a row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Outcome {
    Norm { value: f64, residual: f64, iterations: usize },
    Estimate { mean: f64, stderr: f64, samples: usize },
    Coefficient { re: f64, im: f64, expected: f64 },
    Quantity { value: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub operation: String,
    pub parameters: Value,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub seed: Option<u64>,
}

impl Row {
    pub fn new(operation: &str, parameters: Value, outcome: Outcome, seed: Option<u64>) -> Self {
        Self { operation: operation.to_string(), parameters, outcome, seed }
    }

    /// A norm computed by a direct factorization.
    pub fn exact(operation: &str, parameters: Value, value: f64) -> Self {
        Self::new(operation, parameters, Outcome::Norm { value, residual: 0.0, iterations: 0 }, None)
    }

    pub fn iterative(operation: &str, parameters: Value, r: &SpectralResult) -> Self {
        Self::new(
            operation,
            parameters,
            Outcome::Norm { value: r.value, residual: r.residual, iterations: r.iterations },
            None,
        )
    }

    pub fn estimate(operation: &str, parameters: Value, e: &McEstimate, seed: u64) -> Self {
        Self::new(
            operation,
            parameters,
            Outcome::Estimate { mean: e.mean, stderr: e.stderr, samples: e.samples },
            Some(seed),
        )
    }

    pub fn quantity(operation: &str, parameters: Value, value: f64) -> Self {
        Self::new(operation, parameters, Outcome::Quantity { value }, None)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Rows and verdicts collected by an experiment.
#[derive(Debug, Default)]
pub struct Outcomes {
    pub rows: Vec<Row>,
    pub verdicts: Vec<Verdict>,
}

impl Outcomes {
    pub fn row(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict { name: name.into(), passed, detail: detail.into() });
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: Command,
    pub argv: Vec<String>,
    pub rows: Vec<Row>,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
    pub duration_seconds: f64,
}

impl Report {
    pub fn new(config: Command, argv: Vec<String>, outcomes: Outcomes, duration_seconds: f64) -> Self {
        let passed = outcomes.verdicts.iter().all(|v| v.passed);
        Self {
            schema: SCHEMA,
            command: config.name().to_string(),
            config,
            argv,
            rows: outcomes.rows,
            verdicts: outcomes.verdicts,
            passed,
            duration_seconds,
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: Option<&Path>) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        match path {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                Ok(out.flush()?)
            }
        }
    }

    /// One line per row; columns that do not apply to a row are left empty.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file);
        out.write_record([
            "operation", "parameters", "value", "residual", "iterations", "mean", "stderr", "samples", "re", "im",
            "expected", "seed",
        ])?;
        for row in &self.rows {
            let mut fields = vec![String::new(); 12];
            fields[0] = row.operation.clone();
            fields[1] = row.parameters.to_string();
            match &row.outcome {
                Outcome::Norm { value, residual, iterations } => {
                    fields[2] = value.to_string();
                    fields[3] = residual.to_string();
                    fields[4] = iterations.to_string();
                }
                Outcome::Estimate { mean, stderr, samples } => {
                    fields[5] = mean.to_string();
                    fields[6] = stderr.to_string();
                    fields[7] = samples.to_string();
                }
                Outcome::Coefficient { re, im, expected } => {
                    fields[8] = re.to_string();
                    fields[9] = im.to_string();
                    fields[10] = expected.to_string();
                }
                Outcome::Quantity { value } => fields[2] = value.to_string(),
            }
            if let Some(seed) = row.seed {
                fields[11] = seed.to_string();
            }
            out.write_record(&fields)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// The config echo of a report written earlier. Only the `config` field is read.
pub fn read_config(path: &Path) -> Result<Command> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let schema = value.get("schema").and_then(Value::as_u64);
    if schema != Some(u64::from(SCHEMA)) {
        anyhow::bail!("{}: unsupported report schema {schema:?}", path.display());
    }
    let config = value.get_mut("config").map(Value::take).context("report has no config")?;
    serde_json::from_value(config).with_context(|| format!("invalid config in {}", path.display()))
}
