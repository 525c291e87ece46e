use std::f64::consts::PI;

use anyhow::{bail, Result};
use mhankel::hankel::{spectral_norm, symmetric_dense_norm, HilbertKernel, HilbertVariant};
use serde_json::json;

use crate::args::{HilbertArgs, Mode};
use crate::report::{Outcomes, Row};

/// Largest truncation accepted in dense mode.
pub const MAX_DENSE_N: usize = 4000;

pub fn run(args: &HilbertArgs) -> Result<Outcomes> {
    if args.n.is_empty() {
        bail!("--n needs at least one truncation size");
    }
    if args.n.windows(2).any(|w| w[0] >= w[1]) {
        bail!("--n must be strictly increasing, got {:?}", args.n);
    }
    if args.mode == Mode::Svd {
        if let Some(&n) = args.n.iter().find(|&&n| n > MAX_DENSE_N) {
            bail!("--mode svd is limited to N ≤ {MAX_DENSE_N}, got {n}; use --mode matfree");
        }
    }
    let variant = args.variant;
    let mut out = Outcomes::default();
    let mut values = Vec::with_capacity(args.n.len());
    for &n in &args.n {
        let kernel = HilbertKernel::new(variant, n)?;
        let parameters = json!({ "variant": variant.name(), "n": n, "dim": variant.dim(n), "mode": args.mode });
        let value = match args.mode {
            Mode::Svd => {
                let value = symmetric_dense_norm(&kernel.dense())?;
                out.row(Row::exact("hilbert_norm", parameters, value));
                value
            }
            Mode::Matfree => {
                let r = spectral_norm(&kernel, args.tol, args.max_iter);
                out.row(Row::iterative("hilbert_norm", parameters, &r));
                out.check(
                    format!("converged n={n}"),
                    r.converged,
                    format!("{} iterations, residual {:e} (tol {:e})", r.iterations, r.residual, args.tol),
                );
                r.value
            }
        };
        values.push(value);
    }

    let drops: Vec<String> = args
        .n
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[1] < v[0] - args.monotone_slack)
        .map(|(n, v)| format!("N={}: {} > N={}: {}", n[0], v[0], n[1], v[1]))
        .collect();
    out.check(
        "nondecreasing",
        drops.is_empty(),
        if drops.is_empty() {
            format!("values nondecreasing within {:e}", args.monotone_slack)
        } else {
            drops.join("; ")
        },
    );

    // the quehilbert truncations are lower bounds for an unknown constant
    if variant != HilbertVariant::QueHilbert {
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        out.check(
            "bounded by pi",
            max <= PI + args.bound_slack,
            format!("largest value {max} against π + {:e}", args.bound_slack),
        );
    }
    Ok(out)
}
