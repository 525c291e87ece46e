use anyhow::{ensure, Result};
use mhankel::arith;
use mhankel::hankel::{
    bennett_tails, bennett_weights, build_hankel, embed_matrix, largest_singular_value, multiplier_lower_bounds,
    schur_apply, IndexSetSpec, Symbol, WeightPattern,
};
use rand::SeedableRng;
use serde_json::json;

use super::read_symbol_file;
use crate::args::{Pattern, SchurArgs};
use crate::random::{gaussian_matrix, gaussian_symbol, nonnegative_symbol, Rng64};
use crate::report::{Outcomes, Row};

pub fn run(args: &SchurArgs) -> Result<Outcomes> {
    let mut out = Outcomes::default();
    match args.pattern {
        Pattern::HomogMaskAllM => {
            for (trial, symbol) in symbols(args, gaussian_symbol)?.iter().enumerate() {
                homog_mask(trial, symbol, args, &mut out)?;
            }
        }
        Pattern::SkewLogNonneg => {
            for (trial, symbol) in symbols(args, nonnegative_symbol)?.iter().enumerate() {
                ensure!(
                    symbol.rho().iter().all(|(_, c)| c.re >= 0.0 && c.im == 0.0),
                    "skew-log-nonneg needs a nonnegative symbol"
                );
                skew_log(trial, symbol, args, &mut out)?;
            }
        }
        Pattern::SkewRadialEmbed => {
            let symbols = match &args.symbol {
                Some(path) => vec![read_symbol_file(path)?],
                None => {
                    let mut rng = Rng64::seed_from_u64(args.seed);
                    (0..args.trials).map(|_| embed_matrix(&gaussian_matrix(&mut rng, args.n))).collect::<Result<_, _>>()?
                }
            };
            for (trial, symbol) in symbols.iter().enumerate() {
                skew_radial(trial, symbol, args, &mut out)?;
            }
        }
        Pattern::BennettTails => tails(args, &mut out)?,
        Pattern::MultiplierSearch => search(args, &mut out)?,
    }
    Ok(out)
}

fn symbols(args: &SchurArgs, draw: fn(&mut Rng64, u64, usize) -> Symbol) -> Result<Vec<Symbol>> {
    if let Some(path) = &args.symbol {
        return Ok(vec![read_symbol_file(path)?]);
    }
    ensure!(args.max_n >= 1 && args.terms >= 1, "--max-n and --terms must be positive");
    let mut rng = Rng64::seed_from_u64(args.seed);
    Ok((0..args.trials).map(|_| draw(&mut rng, args.max_n, args.terms)).collect())
}

fn seed_of(args: &SchurArgs) -> Option<u64> {
    args.symbol.is_none().then_some(args.seed)
}

fn tagged(row: Row, seed: Option<u64>) -> Row {
    match seed {
        Some(s) => row.with_seed(s),
        None => row,
    }
}

fn homog_mask(trial: usize, symbol: &Symbol, args: &SchurArgs, out: &mut Outcomes) -> Result<()> {
    let h = build_hankel(symbol, &IndexSetSpec::DivisorClosed { threshold: 1 })?;
    let unmasked = largest_singular_value(h.entries())?;
    let seed = seed_of(args);
    out.row(tagged(Row::exact("unmasked_norm", json!({ "trial": trial, "dim": h.dim() }), unmasked), seed));
    let top = symbol.support().map(arith::omega).collect::<Result<Vec<_>, _>>()?.into_iter().max().unwrap_or(0);
    let mut worst = f64::NEG_INFINITY;
    for level in 0..=top {
        let masked = largest_singular_value(&schur_apply(&h, &WeightPattern::HomogMask(level)))?;
        out.row(tagged(Row::exact("masked_norm", json!({ "trial": trial, "level": level }), masked), seed));
        worst = worst.max(masked - unmasked);
    }
    out.check(
        format!("homogeneous masks contract (trial {trial})"),
        worst <= args.tol,
        format!("max over levels 0..={top} of masked - unmasked = {worst:e}, tol {:e}", args.tol),
    );
    Ok(())
}

fn skew_log(trial: usize, symbol: &Symbol, args: &SchurArgs, out: &mut Outcomes) -> Result<()> {
    let h = build_hankel(symbol, &IndexSetSpec::DivisorClosed { threshold: 1 })?;
    let plain = largest_singular_value(h.entries())?;
    let skew = largest_singular_value(&schur_apply(&h, &WeightPattern::SkewLog))?;
    let seed = seed_of(args);
    let parameters = json!({ "trial": trial, "dim": h.dim() });
    out.row(tagged(Row::exact("matrix_norm", parameters.clone(), plain), seed));
    out.row(tagged(Row::exact("skew_log_norm", parameters, skew), seed));
    out.check(
        format!("skew-log contracts on nonnegative symbols (trial {trial})"),
        skew <= plain + args.tol,
        format!("{skew} ≤ {plain} + {:e}", args.tol),
    );
    Ok(())
}

fn skew_radial(trial: usize, symbol: &Symbol, args: &SchurArgs, out: &mut Outcomes) -> Result<()> {
    let h = build_hankel(symbol, &IndexSetSpec::DivisorClosed { threshold: 2 })?;
    let plain = largest_singular_value(h.entries())?;
    let radial = largest_singular_value(&schur_apply(&h, &WeightPattern::SkewRadial))?;
    let seed = seed_of(args);
    let parameters = json!({ "trial": trial, "dim": h.dim() });
    out.row(tagged(Row::exact("matrix_norm", parameters.clone(), plain), seed));
    out.row(tagged(Row::exact("skew_radial_norm", parameters, radial), seed));
    let err = (radial - 0.5 * plain).abs();
    out.check(
        format!("skew-radial halves embedded symbols (trial {trial})"),
        err <= args.tol,
        format!("|{radial} - {plain}/2| = {err:e}, tol {:e}", args.tol),
    );
    Ok(())
}

fn tails(args: &SchurArgs, out: &mut Outcomes) -> Result<()> {
    let t = bennett_tails(args.table_size)?;
    let parameters = json!({
        "table_size": args.table_size,
        "outer_index": t.outer_index,
        "inner_index": t.inner_index,
    });
    out.row(Row::quantity("row_tail", parameters.clone(), t.row_tail));
    out.row(Row::quantity("column_tail", parameters.clone(), t.column_tail));
    out.row(Row::quantity("tail_gap", parameters, t.gap));
    out.check(
        "tails separated",
        t.gap >= args.min_gap,
        format!("row {} - column {} = {} against {}", t.row_tail, t.column_tail, t.gap, args.min_gap),
    );
    Ok(())
}

fn search(args: &SchurArgs, out: &mut Outcomes) -> Result<()> {
    let w = bennett_weights(args.pairs)?;
    let bounds = multiplier_lower_bounds(&w, args.iterations)?;
    for (step, &b) in bounds.iter().enumerate() {
        out.row(Row::quantity("multiplier_lower_bound", json!({ "pairs": args.pairs, "step": step }), b));
    }
    let drop = bounds.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
    out.check(
        "lower bounds nondecreasing",
        drop <= args.tol,
        format!("largest decrease {drop:e}, tol {:e}; last bound {}", args.tol, bounds[bounds.len() - 1]),
    );
    Ok(())
}
