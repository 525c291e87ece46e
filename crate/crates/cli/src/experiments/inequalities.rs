use std::f64::consts::{PI, TAU};

use anyhow::{ensure, Result};
use mhankel::dirichlet::{CharacterPoint, DirichletPolynomial};
use mhankel::hardy::{
    hardy_homog_sum, hardy_inequality_sides, helson_lower, mc_hp_norm, nested_hp_norm, slice_hp_norm,
    SLICE_OVERSAMPLING,
};
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::args::InequalityArgs;
use crate::random::{smooth_polynomial, Rng64};
use crate::report::{Outcomes, Row};

/// Primes 2, 3, 5 carry the random family.
const DIMENSION: usize = 3;

pub fn run(args: &InequalityArgs) -> Result<Outcomes> {
    ensure!(args.p.iter().all(|&p| p > 0.0 && p.is_finite()), "--p values must be positive");
    let mut rng = Rng64::seed_from_u64(args.seed);
    let mut out = Outcomes::default();
    for trial in 0..args.trials {
        let f = smooth_polynomial(&mut rng);
        let grid = args.grid.unwrap_or(SLICE_OVERSAMPLING * (f.degree() as usize + 1));
        trial_checks(trial, &f, grid, args, &mut rng, &mut out)?;
    }
    Ok(out)
}

fn trial_checks(
    trial: usize,
    f: &DirichletPolynomial,
    grid: usize,
    args: &InequalityArgs,
    rng: &mut Rng64,
    out: &mut Outcomes,
) -> Result<()> {
    let base = json!({ "trial": trial, "terms": f.len(), "support": f.support().collect::<Vec<_>>() });
    let with = |extra: serde_json::Value| {
        let mut v = base.clone();
        if let (Some(map), serde_json::Value::Object(more)) = (v.as_object_mut(), extra) {
            map.extend(more);
        }
        v
    };

    let seed: u64 = rng.random();
    let h1 = mc_hp_norm(f, 1.0, args.samples, seed)?;
    out.row(Row::estimate("h1_norm", base.clone(), &h1, seed));
    let h1_upper = h1.mean + args.sigmas * h1.stderr + args.rounding_tol;

    let helson = helson_lower(f);
    out.row(Row::quantity("helson_lower", base.clone(), helson));
    out.check(
        format!("Helson lower bound (trial {trial})"),
        helson <= h1_upper,
        format!("{helson} ≤ {} + {}·{:e} + {:e}", h1.mean, args.sigmas, h1.stderr, args.rounding_tol),
    );

    let homog = hardy_homog_sum(f, args.samples, seed)?;
    out.row(Row::estimate("hardy_homog_sum", base.clone(), &homog, seed));
    out.check(
        format!("Hardy homogeneous sum (trial {trial})"),
        homog.mean <= PI * h1_upper,
        format!("{} ≤ π·{h1_upper}", homog.mean),
    );

    for &p in &args.p {
        let (direct_seed, nested_seed): (u64, u64) = (rng.random(), rng.random());
        let direct = mc_hp_norm(f, p, args.samples, direct_seed)?;
        let nested = nested_hp_norm(f, p, args.samples, grid, nested_seed)?;
        out.row(Row::estimate("direct_hp_norm", with(json!({ "p": p })), &direct, direct_seed));
        out.row(Row::estimate("nested_hp_norm", with(json!({ "p": p, "grid": grid })), &nested, nested_seed));
        let combined = direct.stderr.hypot(nested.stderr);
        let err = (direct.mean - nested.mean).abs();
        out.check(
            format!("nested equals direct p={p} (trial {trial})"),
            err <= args.sigmas * combined + args.rounding_tol,
            format!(
                "|{} - {}| = {err:e} against {}·{combined:e} + {:e}",
                direct.mean, nested.mean, args.sigmas, args.rounding_tol
            ),
        );
        if p == 2.0 {
            let exact = f.h2_norm();
            for (name, e) in [("direct", &direct), ("nested", &nested)] {
                let err = (e.mean - exact).abs();
                out.check(
                    format!("{name} p=2 equals coefficient norm (trial {trial})"),
                    err <= args.sigmas * e.stderr + args.rounding_tol,
                    format!("|{} - {exact}| = {err:e} against {}·{:e}", e.mean, args.sigmas, e.stderr),
                );
            }
        }
    }

    for slice in 0..args.slices {
        let angles: Vec<f64> = (0..DIMENSION).map(|_| TAU * rng.random::<f64>()).collect();
        let z = CharacterPoint::from_angles(&angles);
        let b = f.slice(&z)?;
        let parameters = with(json!({ "slice": slice, "angles": angles, "grid": grid }));

        let quadrature = slice_hp_norm(f, 2.0, &z, grid)?;
        let parseval = b.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        out.row(Row::quantity("slice_h2_norm", parameters.clone(), quadrature));
        let err = (quadrature - parseval).abs();
        out.check(
            format!("slice p=2 quadrature is exact (trial {trial}, slice {slice})"),
            err <= args.parseval_tol,
            format!("|{quadrature} - {parseval}| = {err:e}, tol {:e}", args.parseval_tol),
        );

        let (lhs, rhs) = hardy_inequality_sides(&b, grid)?;
        out.row(Row::quantity("hardy_sum", parameters.clone(), lhs));
        out.row(Row::quantity("pi_slice_h1_norm", parameters, rhs));
        out.check(
            format!("one-variable Hardy inequality (trial {trial}, slice {slice})"),
            lhs <= rhs,
            format!("{lhs} ≤ {rhs}"),
        );
    }
    Ok(())
}
