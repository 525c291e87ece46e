use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::HankelMatrix;
use crate::arith;

/// Entrywise weight `w(m, n)` for Schur multiplication. All weights lie in `[0, 1]`
/// (for `Constant(c)` that holds when `c` does).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum WeightPattern {
    /// `log n / (log m + log n)`, zero at `m = n = 1`.
    SkewLog,
    /// `Ω(n) / (Ω(m) + Ω(n))`, zero at `m = n = 1`.
    SkewRadial,
    /// Indicator of `Ω(m) + Ω(n) = level`.
    HomogMask(u32),
    Constant(f64),
}

#[derive(Clone, Copy, Debug)]
struct IndexInfo {
    log: f64,
    omega: u32,
}

impl IndexInfo {
    fn of(n: u64) -> Self {
        let kappa = arith::factorize(n).expect("matrix indices are factorable");
        Self {
            log: arith::default_table().log_of_index(&kappa),
            omega: kappa.order(),
        }
    }
}

impl WeightPattern {
    pub fn weight(&self, m: u64, n: u64) -> f64 {
        self.weight_from(IndexInfo::of(m), IndexInfo::of(n))
    }

    fn weight_from(&self, m: IndexInfo, n: IndexInfo) -> f64 {
        match *self {
            Self::SkewLog => {
                let total = m.log + n.log;
                if total == 0.0 {
                    0.0
                } else {
                    n.log / total
                }
            }
            Self::SkewRadial => {
                let total = m.omega + n.omega;
                if total == 0 {
                    0.0
                } else {
                    f64::from(n.omega) / f64::from(total)
                }
            }
            Self::HomogMask(level) => {
                if m.omega + n.omega == level {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Constant(c) => c,
        }
    }
}

/// `(M_{ij} · w(index_i, index_j))`.
pub fn schur_apply(m: &HankelMatrix, pattern: &WeightPattern) -> DMatrix<Complex64> {
    let info: Vec<IndexInfo> = m.index_set().iter().map(|&n| IndexInfo::of(n)).collect();
    let entries = m.entries();
    DMatrix::from_fn(info.len(), info.len(), |i, j| {
        entries[(i, j)] * pattern.weight_from(info[i], info[j])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::{build_hankel, embed_matrix, phi_d_symbol, IndexSetSpec, Symbol};

    #[test]
    fn weight_conventions() {
        assert_eq!(WeightPattern::SkewLog.weight(1, 1), 0.0);
        assert_eq!(WeightPattern::SkewRadial.weight(1, 1), 0.0);
        assert_eq!(WeightPattern::SkewLog.weight(1, 5), 1.0);
        assert_eq!(WeightPattern::SkewLog.weight(5, 1), 0.0);
        assert_eq!(WeightPattern::SkewLog.weight(7, 7), 0.5);
        assert!((WeightPattern::SkewLog.weight(2, 4) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(WeightPattern::SkewRadial.weight(3, 4), 2.0 / 3.0);
        assert_eq!(WeightPattern::HomogMask(3).weight(2, 6), 1.0);
        assert_eq!(WeightPattern::HomogMask(2).weight(2, 6), 0.0);
        for m in 1..40 {
            for n in 1..40 {
                for w in [WeightPattern::SkewLog, WeightPattern::SkewRadial] {
                    let v = w.weight(m, n);
                    assert!((0.0..=1.0).contains(&v));
                }
            }
        }
    }

    #[test]
    fn constant_one_is_identity() {
        let phi = Symbol::from_analytic(&phi_d_symbol(2).unwrap());
        let h = build_hankel(&phi, &IndexSetSpec::DivisorClosed { threshold: 1 }).unwrap();
        assert_eq!(&schur_apply(&h, &WeightPattern::Constant(1.0)), h.entries());
    }

    #[test]
    fn skew_radial_halves_embedded_symbols() {
        let c = DMatrix::from_fn(3, 4, |i, j| Complex64::new(i as f64 - j as f64, 0.3 * j as f64));
        let h = build_hankel(&embed_matrix(&c).unwrap(), &IndexSetSpec::DivisorClosed { threshold: 2 })
            .unwrap();
        assert_eq!(schur_apply(&h, &WeightPattern::SkewRadial), h.entries() * Complex64::new(0.5, 0.0));
    }

    #[test]
    fn mask_two_kills_the_linear_symbol() {
        let phi1 = Symbol::from_analytic(&phi_d_symbol(1).unwrap());
        let h = build_hankel(&phi1, &IndexSetSpec::DivisorClosed { threshold: 1 }).unwrap();
        assert!(schur_apply(&h, &WeightPattern::HomogMask(2)).iter().all(|z| z.norm() == 0.0));
        assert_eq!(&schur_apply(&h, &WeightPattern::HomogMask(1)), h.entries());
    }
}
