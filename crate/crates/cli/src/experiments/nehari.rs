use std::f64::consts::PI;

use anyhow::Result;
use mhankel::hankel::{nehari_symbol_coefficients, nehari_symbol_sup};
use serde_json::json;

use crate::args::NehariArgs;
use crate::report::{Outcome, Outcomes, Row};

pub fn run(args: &NehariArgs) -> Result<Outcomes> {
    let coefficients = nehari_symbol_coefficients(args.k_max, args.grid)?;
    let mut out = Outcomes::default();
    let (mut worst, mut worst_k, mut worst_im) = (0.0, 0, 0.0f64);
    for (i, c) in coefficients.iter().enumerate() {
        let k = i + 1;
        let expected = 1.0 / k as f64;
        out.row(Row::new(
            "fourier_coefficient",
            json!({ "k": k, "grid": args.grid }),
            Outcome::Coefficient { re: c.re, im: c.im, expected },
            None,
        ));
        let err = (c - expected).norm();
        if err > worst {
            (worst, worst_k) = (err, k);
        }
        worst_im = worst_im.max(c.im.abs());
    }
    out.check(
        "coefficients equal 1/k",
        worst <= args.tol,
        format!("max_k |c_k - 1/k| = {worst:e} at k = {worst_k}, tol {:e}", args.tol),
    );
    out.check(
        "coefficients are real",
        worst_im <= args.im_tol,
        format!("max_k |Im c_k| = {worst_im:e}, tol {:e}", args.im_tol),
    );

    let sup = nehari_symbol_sup(args.grid)?;
    out.row(Row::quantity("symbol_sup", json!({ "grid": args.grid }), sup));
    out.check(
        "supremum equals pi",
        (sup - PI).abs() <= args.sup_tol,
        format!("|{sup} - π| = {:e}, tol {:e}", (sup - PI).abs(), args.sup_tol),
    );
    Ok(out)
}
