use anyhow::Result;
use mhankel::hankel::{
    build_hankel, embed_matrix, largest_singular_value, spectral_norm, IndexSetSpec, DEFAULT_MAX_ITER,
};
use mhankel::Complex64;
use nalgebra::DMatrix;
use rand::SeedableRng;
use serde_json::json;

use super::read_matrix_file;
use crate::args::EmbedArgs;
use crate::random::{gaussian_matrix, Rng64};
use crate::report::{Outcomes, Row};

/// Largest matrix that is embedded.
pub const MAX_SIZE: usize = 6;

pub fn run(args: &EmbedArgs) -> Result<Outcomes> {
    let matrices = match &args.matrix {
        Some(path) => vec![read_matrix_file(path)?],
        None => {
            anyhow::ensure!((1..=MAX_SIZE).contains(&args.n), "--n must lie in 1..={MAX_SIZE}, got {}", args.n);
            let mut rng = Rng64::seed_from_u64(args.seed);
            (0..args.trials).map(|_| gaussian_matrix(&mut rng, args.n)).collect()
        }
    };
    let mut out = Outcomes::default();
    for (trial, c) in matrices.iter().enumerate() {
        verify(trial, c, args, &mut out)?;
    }
    Ok(out)
}

fn verify(trial: usize, c: &DMatrix<Complex64>, args: &EmbedArgs, out: &mut Outcomes) -> Result<()> {
    anyhow::ensure!(!c.is_empty(), "matrix is empty");
    let shape = format!("{}x{}", c.nrows(), c.ncols());
    let parameters = json!({ "trial": trial, "shape": shape });
    let seed = args.matrix.is_none().then_some(args.seed);
    let with_seed = |row: Row| match seed {
        Some(s) => row.with_seed(s),
        None => row,
    };

    let operator = largest_singular_value(c)?;
    let hilbert_schmidt = c.norm();
    let symbol = embed_matrix(c)?;
    let restricted = build_hankel(&symbol, &IndexSetSpec::DivisorClosed { threshold: 2 })?;
    let r = spectral_norm(&restricted, args.solver_tol, DEFAULT_MAX_ITER);
    let full = build_hankel(&symbol, &IndexSetSpec::DivisorClosed { threshold: 1 })?;
    let full_norm = largest_singular_value(full.entries())?;

    out.row(with_seed(Row::exact("matrix_operator_norm", parameters.clone(), operator)));
    out.row(with_seed(Row::exact("matrix_hilbert_schmidt_norm", parameters.clone(), hilbert_schmidt)));
    out.row(with_seed(Row::iterative("restricted_form_norm", parameters.clone(), &r)));
    out.row(with_seed(Row::exact("full_form_norm", parameters, full_norm)));

    let gap = (r.value - operator).abs();
    out.check(
        format!("restricted norm equals operator norm (trial {trial})"),
        r.converged && gap <= args.tol,
        format!("|{} - {}| = {gap:e}, tol {:e}, converged {}", r.value, operator, args.tol, r.converged),
    );
    let (low, high) = (hilbert_schmidt - args.margin, 4.0 * hilbert_schmidt + args.margin);
    out.check(
        format!("full norm within Hilbert-Schmidt sandwich (trial {trial})"),
        low <= full_norm && full_norm <= high,
        format!("{hilbert_schmidt} ≤ {full_norm} ≤ 4·{hilbert_schmidt}, margin {:e}", args.margin),
    );
    Ok(())
}
