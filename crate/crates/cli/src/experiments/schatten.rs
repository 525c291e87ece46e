use anyhow::{ensure, Result};
use mhankel::hankel::{build_hankel, embed_matrix, frobenius_via_divisors, schatten_norm, IndexSetSpec};
use mhankel::Complex64;
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use serde_json::json;

use super::derived_seed;
use crate::args::SchattenArgs;
use crate::random::{composite_symbol, gaussian_matrix, Rng64};
use crate::report::{Outcomes, Row};

/// Terms of the random symbols in the Frobenius check.
const FROBENIUS_TERMS: usize = 12;

fn restricted(c: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    Ok(build_hankel(&embed_matrix(c)?, &IndexSetSpec::DivisorClosed { threshold: 2 })?.into_entries())
}

pub fn run(args: &SchattenArgs) -> Result<Outcomes> {
    ensure!(args.p.iter().all(|&p| p > 0.0 && p.is_finite()), "--p values must be positive");
    ensure!(args.n >= 1, "--n must be positive");
    let mut out = Outcomes::default();
    doubling(args, &mut out)?;
    diagonal(args, &mut out)?;
    frobenius(args, &mut out)?;
    Ok(out)
}

fn doubling(args: &SchattenArgs, out: &mut Outcomes) -> Result<()> {
    let mut rng = Rng64::seed_from_u64(args.seed);
    for trial in 0..args.trials {
        let c = gaussian_matrix(&mut rng, args.n);
        let m0 = restricted(&c)?;
        let shape = format!("{}x{}", c.nrows(), c.ncols());
        let mut worst: f64 = 0.0;
        for &p in &args.p {
            let lhs = schatten_norm(&m0, p)?.powf(p);
            let rhs = 2.0 * schatten_norm(&c, p)?.powf(p);
            let parameters = json!({ "trial": trial, "shape": shape, "p": p });
            out.row(Row::exact("embedded_schatten_p_power", parameters.clone(), lhs).with_seed(args.seed));
            out.row(Row::exact("matrix_schatten_p_power", parameters, rhs / 2.0).with_seed(args.seed));
            worst = worst.max((lhs - rhs).abs());
        }
        out.check(
            format!("Schatten doubling (trial {trial})"),
            worst <= args.tol,
            format!("max_p |‖M0‖_p^p - 2‖C‖_p^p| = {worst:e}, tol {:e}", args.tol),
        );
    }
    Ok(())
}

/// `C = diag(k^{-α})`: the `S_2` sum grows with `K` while the `S_q` sum settles when `qα > 1`.
fn diagonal(args: &SchattenArgs, out: &mut Outcomes) -> Result<()> {
    let mut previous: Option<f64> = None;
    let mut growing = true;
    for &k in &args.diag_k {
        ensure!(k >= 1, "--diag-k values must be positive");
        let entries = DVector::from_fn(k, |i, _| Complex64::new(((i + 1) as f64).powf(-args.alpha), 0.0));
        let m0 = restricted(&DMatrix::from_diagonal(&entries))?;
        let parameters = json!({ "k": k, "alpha": args.alpha });
        let s2 = schatten_norm(&m0, 2.0)?.powi(2);
        let s2_sum: f64 = 2.0 * (1..=k).map(|j| (j as f64).powf(-2.0 * args.alpha)).sum::<f64>();
        let sq = schatten_norm(&m0, args.q)?.powf(args.q);
        let sq_sum: f64 = 2.0 * (1..=k).map(|j| (j as f64).powf(-args.q * args.alpha)).sum::<f64>();
        out.row(Row::exact("diagonal_s2_squared", parameters.clone(), s2));
        out.row(Row::exact("diagonal_sq_power", json!({ "k": k, "alpha": args.alpha, "q": args.q }), sq));
        out.check(
            format!("diagonal S2 sum K={k}"),
            (s2 - s2_sum).abs() <= args.tol,
            format!("|{s2} - 2Σk^(-2α)| = {:e}, tol {:e}", (s2 - s2_sum).abs(), args.tol),
        );
        out.check(
            format!("diagonal Sq sum K={k}"),
            (sq - sq_sum).abs() <= args.tol,
            format!("|{sq} - 2Σk^(-qα)| = {:e}, tol {:e}", (sq - sq_sum).abs(), args.tol),
        );
        if let Some(p) = previous {
            growing &= s2 > p;
        }
        previous = Some(s2);
    }
    if args.diag_k.len() > 1 {
        out.check("diagonal S2 sum grows with K", growing, "S2² increases along --diag-k");
    }
    Ok(())
}

fn frobenius(args: &SchattenArgs, out: &mut Outcomes) -> Result<()> {
    let seed = derived_seed(args.seed, 1);
    let mut rng = Rng64::seed_from_u64(seed);
    for trial in 0..args.frobenius_trials {
        let symbol = composite_symbol(&mut rng, args.frobenius_max_n, FROBENIUS_TERMS);
        let h = build_hankel(&symbol, &IndexSetSpec::DivisorClosed { threshold: 2 })?;
        let direct = schatten_norm(h.entries(), 2.0)?;
        let divisors = frobenius_via_divisors(&symbol)?;
        let parameters = json!({ "trial": trial, "terms": symbol.rho().len(), "dim": h.dim() });
        out.row(Row::exact("restricted_hilbert_schmidt_norm", parameters.clone(), direct).with_seed(seed));
        out.row(Row::exact("frobenius_via_divisors", parameters, divisors).with_seed(seed));
        out.check(
            format!("Frobenius-divisor identity (trial {trial})"),
            (direct - divisors).abs() <= args.frobenius_tol,
            format!("|{direct} - {divisors}| = {:e}, tol {:e}", (direct - divisors).abs(), args.frobenius_tol),
        );
    }
    Ok(())
}
