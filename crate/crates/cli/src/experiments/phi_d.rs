use std::f64::consts::PI;

use anyhow::{ensure, Result};
use mhankel::dirichlet::DirichletPolynomial;
use mhankel::hankel::{build_hankel, largest_singular_value, phi_d_symbol, IndexSetSpec, Symbol};
use mhankel::hardy::mc_hp_norm;
use mhankel::Complex64;
use serde_json::json;

use super::derived_seed;
use crate::args::PhiDArgs;
use crate::report::{Outcomes, Row};

/// Largest `d` for the exact norm; the divisor-closed set has `3^d` elements.
pub const MAX_D: usize = 4;

pub fn run(args: &PhiDArgs) -> Result<Outcomes> {
    ensure!(!args.d.is_empty(), "--d needs at least one value");
    ensure!(args.d.iter().all(|d| (1..=MAX_D).contains(d)), "--d values must lie in 1..={MAX_D}");
    let mut out = Outcomes::default();
    for &d in &args.d {
        let phi = phi_d_symbol(d)?;
        let h = build_hankel(&Symbol::from_analytic(&phi), &IndexSetSpec::DivisorClosed { threshold: 1 })?;
        let parameters = json!({ "d": d, "dim": h.dim() });

        let norm = largest_singular_value(h.entries())?;
        let want = 2f64.powf(d as f64 / 2.0);
        out.row(Row::exact("hankel_norm", parameters.clone(), norm));
        out.check(
            format!("hankel norm d={d}"),
            (norm - want).abs() <= args.tol,
            format!("|{norm} - 2^(d/2)| = {:e}, tol {:e}", (norm - want).abs(), args.tol),
        );

        // ⟨φ_d · 1, φ_d⟩ = ‖φ_d‖²
        let a = h.coefficient_vector(&phi)?;
        let one = h.coefficient_vector(&DirichletPolynomial::constant(Complex64::new(1.0, 0.0)))?;
        let pairing = h.bilinear_eval(&a, &one)?;
        let want = 2f64.powi(d as i32);
        out.row(Row::quantity("pairing", parameters.clone(), pairing.re));
        let err = (pairing - want).norm();
        out.check(
            format!("pairing d={d}"),
            err <= args.tol,
            format!("|{pairing} - 2^d| = {err:e}, tol {:e}", args.tol),
        );

        if d <= args.mc_max_d {
            let seed = derived_seed(args.seed, d as u64);
            let e = mc_hp_norm(&phi, 1.0, args.samples, seed)?;
            let want = (4.0 / PI).powi(d as i32);
            out.row(Row::estimate("h1_norm", parameters, &e, seed));
            let err = (e.mean - want).abs();
            out.check(
                format!("H1 norm d={d}"),
                err <= args.sigmas * e.stderr,
                format!("|{} - (4/π)^d| = {err:e} against {}·{:e}", e.mean, args.sigmas, e.stderr),
            );
        }
    }
    Ok(out)
}
