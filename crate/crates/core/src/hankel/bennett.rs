use faer::Mat;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::spectral::to_faer;
use crate::arith::default_table;
use crate::{Error, Result};

/// Iterated limits of the skew-log weight on embedded prime pairs, taken on a
/// finite prime table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BennettTails {
    /// `w(j₀, K)`: the inner limit runs along the row.
    pub row_tail: f64,
    /// `w(K, j₀)`: the inner limit runs down the column.
    pub column_tail: f64,
    pub gap: f64,
    /// Outer index `j₀ = ⌊K^{1/4}⌋`.
    pub outer_index: usize,
    /// Inner index `K`, the number of prime pairs in the table.
    pub inner_index: usize,
}

/// `w(j, k) = log p_{2k} / (log p_{2j−1} + log p_{2k})`, `j, k ≥ 1`.
fn pair_weight(j: usize, k: usize) -> f64 {
    let table = default_table();
    let log = |i| table.log_prime(i).expect("pair indices are checked against the table");
    let (a, b) = (log(2 * j - 1), log(2 * k));
    b / (a + b)
}

fn check_pairs(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("need at least one prime pair".into()));
    }
    if 2 * k > default_table().len() {
        return Err(Error::PrimeIndexOutOfRange(2 * k));
    }
    Ok(())
}

/// The `k × k` matrix `(w(j, l))` of skew-log weights on embedded pairs.
pub fn bennett_weights(k: usize) -> Result<DMatrix<f64>> {
    check_pairs(k)?;
    Ok(DMatrix::from_fn(k, k, |i, j| pair_weight(i + 1, j + 1)))
}

/// Row and column tails of the embedded skew-log weights over the first
/// `table_size` primes.
pub fn bennett_tails(table_size: usize) -> Result<BennettTails> {
    let inner = table_size / 2;
    check_pairs(inner)?;
    let outer = ((inner as f64).powf(0.25).floor() as usize).max(1);
    let row_tail = pair_weight(outer, inner);
    let column_tail = pair_weight(inner, outer);
    Ok(BennettTails {
        row_tail,
        column_tail,
        gap: row_tail - column_tail,
        outer_index: outer,
        inner_index: inner,
    })
}

/// Lower bounds for the Schur multiplier norm of `w` by alternating maximization.
///
/// Starting from the normalized all-ones matrix, each step takes the top singular
/// pair `(x, y)` of `W∘C` and replaces `C` by the polar factor of `W∘(x yᵀ)`. The
/// returned ratios `‖W∘C‖/‖C‖` form a nondecreasing sequence up to rounding.
pub fn multiplier_lower_bounds(w: &DMatrix<f64>, iterations: usize) -> Result<Vec<f64>> {
    let (rows, cols) = w.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyIndexSet);
    }
    let w = to_faer(w);
    let svd = |m: &Mat<f64>| m.thin_svd().map_err(|_| Error::NoConvergence("SVD"));
    let mut c = Mat::<f64>::from_fn(rows, cols, |_, _| 1.0 / ((rows * cols) as f64).sqrt());
    let mut bounds = Vec::with_capacity(iterations + 1);
    for step in 0..=iterations {
        let weighted = Mat::from_fn(rows, cols, |i, j| w[(i, j)] * c[(i, j)]);
        let top = svd(&weighted)?;
        let c_norm = svd(&c)?.S().column_vector()[0];
        bounds.push(top.S().column_vector()[0] / c_norm);
        if step == iterations {
            break;
        }
        let (x, y) = (top.U().col(0), top.V().col(0));
        let g = Mat::from_fn(rows, cols, |i, j| w[(i, j)] * x[i] * y[j]);
        let polar = svd(&g)?;
        c = polar.U() * polar.V().transpose();
    }
    Ok(bounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tails_straddle_one_half() {
        let t = bennett_tails(10_000).unwrap();
        assert_eq!((t.inner_index, t.outer_index), (5000, 8));
        assert!(t.row_tail > 0.5 && t.column_tail < 0.5);
        assert!(t.gap >= 0.4);
        // direct evaluation from the primes p_15 = 47, p_16 = 53, p_9999, p_10000
        let (l47, l53) = (47f64.ln(), 53f64.ln());
        let (l9999, l10000) = (104723f64.ln(), 104729f64.ln());
        assert!((t.row_tail - l10000 / (l47 + l10000)).abs() < 1e-15);
        assert!((t.column_tail - l53 / (l9999 + l53)).abs() < 1e-15);
    }

    #[test]
    fn weights_match_skew_log() {
        use crate::hankel::WeightPattern;
        let w = bennett_weights(4).unwrap();
        let table = default_table();
        for j in 0..4 {
            for k in 0..4 {
                let (m, n) = (table.prime(2 * j + 1).unwrap(), table.prime(2 * k + 2).unwrap());
                assert!((w[(j, k)] - WeightPattern::SkewLog.weight(m, n)).abs() < 1e-15);
            }
        }
        assert!(bennett_weights(0).is_err());
        assert!(bennett_weights(table.len()).is_err());
    }

    #[test]
    fn lower_bounds_increase() {
        let w = bennett_weights(24).unwrap();
        let bounds = multiplier_lower_bounds(&w, 12).unwrap();
        assert_eq!(bounds.len(), 13);
        for pair in bounds.windows(2) {
            assert!(pair[1] >= pair[0] - 1e-12, "{bounds:?}");
        }
        assert!(bounds[12] > bounds[0]);
    }

    #[test]
    fn constant_weights_are_contractive() {
        let w = DMatrix::from_element(5, 5, 1.0);
        let bounds = multiplier_lower_bounds(&w, 5).unwrap();
        assert!(bounds.iter().all(|b| (b - 1.0).abs() < 1e-12), "{bounds:?}");
    }
}
