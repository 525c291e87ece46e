//! One line per acceptance criterion, each at its stated tolerance and time budget.

use std::time::{Duration, Instant};

use clap::Parser;
use mhankel_cli::{execute, Cli, Outcome, Report};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/frozen.json");

fn run(args: &[&str]) -> Report {
    let argv: Vec<String> = std::iter::once("mhankel").chain(args.iter().copied()).map(String::from).collect();
    let cli = Cli::try_parse_from(&argv).unwrap_or_else(|e| panic!("{argv:?}: {e}"));
    execute(cli.command, argv).unwrap_or_else(|e| panic!("{args:?}: {e:#}"))
}

/// Failed verdict details among those whose name starts with one of `prefixes`.
fn failures(report: &Report, prefixes: &[&str]) -> (usize, Vec<String>) {
    let selected: Vec<_> =
        report.verdicts.iter().filter(|v| prefixes.iter().any(|p| v.name.starts_with(p))).collect();
    let failed = selected.iter().filter(|v| !v.passed).map(|v| format!("{}: {}", v.name, v.detail)).collect();
    (selected.len(), failed)
}

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    start: Instant,
    checks: usize,
    problems: Vec<String>,
}

impl Criterion {
    fn new(id: usize, name: &'static str, budget_secs: u64) -> Self {
        Self { id, name, budget: Duration::from_secs(budget_secs), start: Instant::now(), checks: 0, problems: Vec::new() }
    }

    fn verdicts(&mut self, report: &Report, prefixes: &[&str]) {
        let (n, failed) = failures(report, prefixes);
        if n == 0 {
            self.problems.push(format!("no verdicts matching {prefixes:?}"));
        }
        self.checks += n;
        self.problems.extend(failed);
    }

    fn require(&mut self, ok: bool, detail: String) {
        self.checks += 1;
        if !ok {
            self.problems.push(detail);
        }
    }

    fn finish(mut self) -> bool {
        let elapsed = self.start.elapsed();
        if elapsed > self.budget {
            self.problems.push(format!("took {elapsed:.2?}, budget {:?}", self.budget));
        }
        let passed = self.problems.is_empty();
        println!(
            "criterion {:>2} {:<32} {} ({} checks, {:.2?})",
            self.id,
            self.name,
            if passed { "PASS" } else { "FAIL" },
            self.checks,
            elapsed
        );
        for p in &self.problems {
            println!("    {p}");
        }
        passed
    }
}

fn embedding(results: &mut Vec<bool>) {
    let mut c1 = Criterion::new(1, "embedding exactness", 10);
    let report = run(&["embed-verify", "--n", "6", "--trials", "20", "--seed", "1", "--tol", "1e-8"]);
    c1.verdicts(&report, &["restricted norm equals operator norm"]);
    results.push(c1.finish());

    let mut c2 = Criterion::new(2, "embedding sandwich", 10);
    let report = run(&["embed-verify", "--n", "6", "--trials", "20", "--seed", "1", "--margin", "1e-9"]);
    c2.verdicts(&report, &["full norm within Hilbert-Schmidt sandwich"]);
    results.push(c2.finish());
}

fn schatten(results: &mut Vec<bool>) {
    let mut c3 = Criterion::new(3, "Schatten doubling", 10);
    let report = run(&[
        "schatten-embed", "--p", "1,2,3,4", "--trials", "10", "--tol", "1e-8", "--frobenius-trials", "0",
        "--diag-k", "1",
    ]);
    c3.verdicts(&report, &["Schatten doubling"]);
    results.push(c3.finish());

    let mut c4 = Criterion::new(4, "Frobenius-divisor identity", 30);
    let report = run(&[
        "schatten-embed", "--trials", "0", "--diag-k", "1", "--frobenius-trials", "20", "--frobenius-max-n", "500",
        "--frobenius-tol", "1e-10",
    ]);
    c4.verdicts(&report, &["Frobenius-divisor identity"]);
    results.push(c4.finish());
}

fn phi_d(results: &mut Vec<bool>) {
    let mut c5 = Criterion::new(5, "phi_d separation", 120);
    let report = run(&["phi-d", "--d", "1,2,3,4", "--mc-max-d", "3", "--samples", "1000000", "--tol", "1e-8"]);
    c5.verdicts(&report, &["hankel norm", "pairing", "H1 norm"]);
    let mc = report.verdicts.iter().filter(|v| v.name.starts_with("H1 norm")).count();
    c5.require(mc == 3, format!("expected 3 Monte Carlo checks, got {mc}"));
    results.push(c5.finish());
}

fn hilbert(results: &mut Vec<bool>) {
    let mut c6 = Criterion::new(6, "Hilbert constant", 300);
    let fixtures: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(FIXTURES).unwrap()).unwrap();
    let frozen = fixtures["hilbert_mult_n1000"].as_f64().unwrap();
    for variant in ["mult", "ahilb1", "shifted", "ahilb4"] {
        let dense = run(&["hilbert", "--variant", variant, "--n", "10,100,500,1000,2000", "--mode", "svd"]);
        c6.verdicts(&dense, &["nondecreasing", "bounded by pi"]);
        let matfree = run(&["hilbert", "--variant", variant, "--n", "2000,5000,20000", "--mode", "matfree"]);
        c6.verdicts(&matfree, &["converged", "nondecreasing", "bounded by pi"]);
        if variant == "mult" {
            let at_1000 = dense
                .rows
                .iter()
                .find(|r| r.parameters["n"] == 1000)
                .map(|r| match r.outcome {
                    Outcome::Norm { value, .. } => value,
                    _ => f64::NAN,
                })
                .unwrap();
            c6.require(
                (at_1000 - frozen).abs() <= 1e-8,
                format!("N=1000 value {at_1000} against frozen {frozen}"),
            );
        }
    }
    results.push(c6.finish());
}

fn schur(results: &mut Vec<bool>) {
    let mut c7 = Criterion::new(7, "homogeneous mask contraction", 60);
    let report = run(&["schur", "--pattern", "homog-mask-all-m", "--trials", "50", "--tol", "1e-10"]);
    c7.verdicts(&report, &["homogeneous masks contract"]);
    results.push(c7.finish());

    let mut c8 = Criterion::new(8, "skew comparisons", 30);
    let report = run(&["schur", "--pattern", "skew-log-nonneg", "--trials", "50", "--tol", "1e-10"]);
    c8.verdicts(&report, &["skew-log contracts"]);
    let report = run(&["schur", "--pattern", "skew-radial-embed", "--trials", "50", "--tol", "1e-10"]);
    c8.verdicts(&report, &["skew-radial halves"]);
    results.push(c8.finish());
}

fn inequalities(results: &mut Vec<bool>) {
    let mut c9 = Criterion::new(9, "inequality suite", 180);
    let report = run(&["inequalities", "--trials", "20", "--p", "1,3", "--sigmas", "3", "--parseval-tol", "1e-12"]);
    c9.verdicts(
        &report,
        &["Helson lower bound", "Hardy homogeneous sum", "nested equals direct", "slice p=2", "one-variable Hardy"],
    );
    results.push(c9.finish());
}

fn nehari(results: &mut Vec<bool>) {
    let mut c10 = Criterion::new(10, "Nehari symbol", 5);
    let report = run(&["nehari", "--k-max", "100", "--grid", "65536", "--tol", "1e-8", "--sup-tol", "1e-6"]);
    c10.verdicts(&report, &["coefficients equal 1/k", "supremum equals pi"]);
    results.push(c10.finish());
}

#[test]
fn acceptance_criteria() {
    let mut results = Vec::new();
    embedding(&mut results);
    schatten(&mut results);
    phi_d(&mut results);
    hilbert(&mut results);
    schur(&mut results);
    inequalities(&mut results);
    nehari(&mut results);
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
