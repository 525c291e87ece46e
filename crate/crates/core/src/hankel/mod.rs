//! Truncated multiplicative Hankel matrices and their norms.
//!
//! A symbol `ρ` defines the bilinear form `ρ(a, b) = Σ a_m b_n ρ_{mn}`; its
//! analytic symbol is the Dirichlet series `φ = Σ conj(ρ_n) n^{-s}`, so that
//! `⟨fg, φ⟩ = ρ(a, b)`.

mod bennett;
mod hilbert;
mod nehari;
mod spectral;
mod weights;

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::arith::{self, DivisorCache};
use crate::dirichlet::DirichletPolynomial;
use crate::{Error, Result};

pub use bennett::{bennett_tails, bennett_weights, multiplier_lower_bounds, BennettTails};
pub use hilbert::{
    additive_hilbert_matrix, lanczos_norm, symmetric_dense_norm, HilbertKernel, HilbertVariant,
    SymmetricOperator,
};
pub use nehari::{nehari_symbol, nehari_symbol_coefficients, nehari_symbol_sup};
pub use spectral::{
    largest_singular_value, schatten_norm, singular_values, spectral_norm, LinearOperator,
    SpectralResult, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
pub use weights::{schur_apply, WeightPattern};

/// Coefficient sequence `ρ` of a multiplicative Hankel form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Symbol {
    rho: DirichletPolynomial,
}

impl Symbol {
    pub fn from_rho(rho: DirichletPolynomial) -> Self {
        Self { rho }
    }

    /// The symbol whose analytic symbol is `phi`: `ρ_n = conj(φ_n)`.
    pub fn from_analytic(phi: &DirichletPolynomial) -> Self {
        Self { rho: phi.conj() }
    }

    /// `φ = Σ conj(ρ_n) n^{-s}`.
    pub fn analytic(&self) -> DirichletPolynomial {
        self.rho.conj()
    }

    pub fn rho(&self) -> &DirichletPolynomial {
        &self.rho
    }

    pub fn at(&self, n: u64) -> Complex64 {
        self.rho.coeff(n)
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.rho.support()
    }
}

/// Which rows and columns of `(ρ_{mn})` to keep.
#[derive(Clone, Debug, PartialEq)]
pub enum IndexSetSpec {
    /// `{1, …, N}`.
    RangeFull(u64),
    /// `{2, …, N}`.
    RangeZero(u64),
    /// Every `m ≥ threshold` with `m · k` in the support for some `k ≥ threshold`.
    /// The truncated form norm on this set is the exact form norm.
    DivisorClosed { threshold: u64 },
    Explicit(Vec<u64>),
}

impl IndexSetSpec {
    pub fn resolve(&self, symbol: &Symbol) -> Result<Vec<u64>> {
        let index: Vec<u64> = match self {
            Self::RangeFull(n) => (1..=*n).collect(),
            Self::RangeZero(n) => (2..=*n).collect(),
            Self::DivisorClosed { threshold } => {
                let mut cache = DivisorCache::new((*threshold).max(1));
                let mut set = BTreeSet::new();
                for n in symbol.support() {
                    set.extend(cache.pairs(n)?.iter().map(|&(m, _)| m));
                }
                set.into_iter().collect()
            }
            Self::Explicit(list) => {
                if list.contains(&0) {
                    return Err(Error::Zero);
                }
                list.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
            }
        };
        if index.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        Ok(index)
    }
}

/// Dense `(ρ_{mn})` over a sorted index set. Symmetric, not Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelMatrix {
    index_set: Vec<u64>,
    entries: DMatrix<Complex64>,
}

impl HankelMatrix {
    pub fn index_set(&self) -> &[u64] {
        &self.index_set
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn dim(&self) -> usize {
        self.index_set.len()
    }

    /// Position of the index `m`, if present.
    pub fn position(&self, m: u64) -> Option<usize> {
        self.index_set.binary_search(&m).ok()
    }

    /// `aᵀ M b`, no conjugation.
    pub fn bilinear_eval(&self, a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
        for v in [a, b] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got: v.len(),
                });
            }
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == Complex64::new(0.0, 0.0) {
                continue;
            }
            let row: Complex64 = b.iter().enumerate().map(|(j, &bj)| self.entries[(i, j)] * bj).sum();
            total += ai * row;
        }
        Ok(total)
    }

    /// Coefficients of `f` laid out along the index set. Fails if `f` has
    /// support outside it.
    pub fn coefficient_vector(&self, f: &DirichletPolynomial) -> Result<Vec<Complex64>> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (n, c) in f.iter() {
            let i = self.position(n).ok_or_else(|| {
                Error::InvalidParameter(format!("coefficient at {n} lies outside the index set"))
            })?;
            v[i] = c;
        }
        Ok(v)
    }
}

pub fn build_hankel(symbol: &Symbol, index_set: &IndexSetSpec) -> Result<HankelMatrix> {
    let index_set = index_set.resolve(symbol)?;
    let dim = index_set.len();
    let entries = DMatrix::from_fn(dim, dim, |i, j| {
        index_set[i]
            .checked_mul(index_set[j])
            .map_or(Complex64::new(0.0, 0.0), |mn| symbol.at(mn))
    });
    Ok(HankelMatrix { index_set, entries })
}

/// Symbol with `ρ_{p_{2j-1} p_{2k}} = c_{j,k}`.
pub fn embed_matrix(c: &DMatrix<Complex64>) -> Result<Symbol> {
    let table = arith::default_table();
    let mut pairs = Vec::with_capacity(c.len());
    for j in 0..c.nrows() {
        let odd = table.prime(2 * j + 1)?;
        for k in 0..c.ncols() {
            let even = table.prime(2 * k + 2)?;
            pairs.push((odd * even, c[(j, k)]));
        }
    }
    Ok(Symbol::from_rho(DirichletPolynomial::from_pairs(pairs)?))
}

/// `φ_d = ∏_{j ≤ d} (p_{2j-1}^{-s} + p_{2j}^{-s})`.
pub fn phi_d_symbol(d: usize) -> Result<DirichletPolynomial> {
    let table = arith::default_table();
    let one = Complex64::new(1.0, 0.0);
    let mut phi = DirichletPolynomial::constant(one);
    for j in 1..=d {
        let factor = DirichletPolynomial::from_pairs([
            (table.prime(2 * j - 1)?, one),
            (table.prime(2 * j)?, one),
        ])?;
        phi = phi.multiply(&factor);
    }
    Ok(phi)
}

/// `ρ_n = 1 / (√n log n)` for `2 ≤ n ≤ cutoff`, `ρ_1 = 0`.
pub fn mult_hilbert_symbol(cutoff: u64) -> Result<Symbol> {
    if cutoff < 2 {
        return Err(Error::InvalidParameter(format!("cutoff must be at least 2, got {cutoff}")));
    }
    let pairs = (2..=cutoff)
        .map(|n| Ok((n, Complex64::new(1.0 / ((n as f64).sqrt() * arith::log_n(n)?), 0.0))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Symbol::from_rho(DirichletPolynomial::from_pairs(pairs)?))
}

/// `(Σ (d(n) - 2) |ρ_n|²)^{1/2}`: the Hilbert–Schmidt norm of `(ρ_{mn})_{m,n≥2}`.
pub fn frobenius_via_divisors(symbol: &Symbol) -> Result<f64> {
    let mut total = 0.0;
    for (n, c) in symbol.rho().iter() {
        let omega = arith::omega(n)?;
        if omega < 2 {
            return Err(Error::LowOrderSupport { n, omega });
        }
        total += (arith::divisor_count(n)? - 2) as f64 * c.norm_sqr();
    }
    Ok(total.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn symbol(pairs: &[(u64, f64)]) -> Symbol {
        Symbol::from_rho(DirichletPolynomial::from_pairs(pairs.iter().map(|&(n, v)| (n, c(v)))).unwrap())
    }

    #[test]
    fn analytic_symbol_is_conjugate() {
        let s = Symbol::from_rho(
            DirichletPolynomial::from_pairs([(4, Complex64::new(1.0, 2.0))]).unwrap(),
        );
        assert_eq!(s.analytic().coeff(4), Complex64::new(1.0, -2.0));
        assert_eq!(Symbol::from_analytic(&s.analytic()), s);
    }

    #[test]
    fn build_examples() {
        let h = build_hankel(&symbol(&[(2, 1.0)]), &IndexSetSpec::RangeFull(3)).unwrap();
        let mut expected = DMatrix::zeros(3, 3);
        expected[(0, 1)] = c(1.0);
        expected[(1, 0)] = c(1.0);
        assert_eq!(h.entries(), &expected);

        let phi1 = Symbol::from_analytic(&phi_d_symbol(1).unwrap());
        let h = build_hankel(&phi1, &IndexSetSpec::DivisorClosed { threshold: 1 }).unwrap();
        assert_eq!(h.index_set(), &[1, 2, 3]);
        let nonzero: Vec<_> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| h.entries()[(i, j)] != c(0.0))
            .map(|(i, j)| (h.index_set()[i], h.index_set()[j]))
            .collect();
        assert_eq!(nonzero, vec![(1, 2), (1, 3), (2, 1), (3, 1)]);

        let one = embed_matrix(&DMatrix::from_element(1, 1, c(1.0))).unwrap();
        let h = build_hankel(&one, &IndexSetSpec::DivisorClosed { threshold: 2 }).unwrap();
        assert_eq!(h.index_set(), &[2, 3]);
        assert_eq!(h.entries(), &DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]));
    }

    #[test]
    fn entries_depend_on_the_product_only() {
        let s = mult_hilbert_symbol(400).unwrap();
        let h = build_hankel(&s, &IndexSetSpec::RangeZero(20)).unwrap();
        for (i, &m) in h.index_set().iter().enumerate() {
            for (j, &n) in h.index_set().iter().enumerate() {
                assert_eq!(h.entries()[(i, j)], h.entries()[(j, i)]);
                assert_eq!(h.entries()[(i, j)], s.at(m * n));
            }
        }
    }

    #[test]
    fn empty_index_sets_are_rejected() {
        assert!(matches!(
            build_hankel(&Symbol::default(), &IndexSetSpec::DivisorClosed { threshold: 1 }),
            Err(Error::EmptyIndexSet)
        ));
        assert!(build_hankel(&symbol(&[(7, 1.0)]), &IndexSetSpec::DivisorClosed { threshold: 2 }).is_err());
        assert!(build_hankel(&Symbol::default(), &IndexSetSpec::RangeZero(1)).is_err());
    }

    #[test]
    fn embedding_examples() {
        let one = embed_matrix(&DMatrix::from_element(1, 1, c(1.0))).unwrap();
        assert_eq!(one.support().collect::<Vec<_>>(), vec![6]);
        let eye = embed_matrix(&DMatrix::identity(2, 2)).unwrap();
        assert_eq!(eye.support().collect::<Vec<_>>(), vec![6, 35]);
        let m = DMatrix::from_fn(3, 2, |i, j| Complex64::new(i as f64 + 1.0, j as f64 - 0.5));
        let s = embed_matrix(&m).unwrap();
        assert!((s.analytic().h2_norm() - m.norm()).abs() < 1e-14);
        assert_eq!(s.at(5 * 7), m[(1, 1)]);
    }

    #[test]
    fn phi_d_examples() {
        let one = c(1.0);
        assert_eq!(
            phi_d_symbol(1).unwrap(),
            DirichletPolynomial::from_pairs([(2, one), (3, one)]).unwrap()
        );
        assert_eq!(
            phi_d_symbol(2).unwrap().support().collect::<Vec<_>>(),
            vec![10, 14, 15, 21]
        );
        for d in 1..=6 {
            let phi = phi_d_symbol(d).unwrap();
            assert_eq!(phi.len(), 1 << d);
            assert!((phi.h2_norm() - 2f64.powf(d as f64 / 2.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn multiplicative_hilbert_symbol() {
        let s = mult_hilbert_symbol(36).unwrap();
        assert!((s.at(4).re - 1.0 / (2.0 * 4f64.ln())).abs() < 1e-15);
        assert_eq!(s.at(1), c(0.0));
        let h = build_hankel(&s, &IndexSetSpec::RangeZero(6)).unwrap();
        let (i, j) = (h.position(2).unwrap(), h.position(3).unwrap());
        assert!((h.entries()[(i, j)].re - 1.0 / (6f64.sqrt() * 6f64.ln())).abs() < 1e-15);
        assert!(mult_hilbert_symbol(1).is_err());
    }

    #[test]
    fn frobenius_examples() {
        assert!((frobenius_via_divisors(&symbol(&[(6, 1.0)])).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(frobenius_via_divisors(&symbol(&[(4, 1.0)])).unwrap(), 1.0);
        assert!(matches!(
            frobenius_via_divisors(&symbol(&[(4, 1.0), (5, 1.0)])),
            Err(Error::LowOrderSupport { n: 5, omega: 1 })
        ));
    }

    #[test]
    fn bilinear_examples() {
        let s = mult_hilbert_symbol(100).unwrap();
        let h = build_hankel(&s, &IndexSetSpec::RangeFull(10)).unwrap();
        let unit = |k: usize| {
            let mut v = vec![c(0.0); 10];
            v[k] = c(1.0);
            v
        };
        assert_eq!(h.bilinear_eval(&unit(2), &unit(4)).unwrap(), s.at(15));
        assert!(h.bilinear_eval(&unit(2), &unit(4)[..9]).is_err());
        let zero = build_hankel(&Symbol::default(), &IndexSetSpec::RangeFull(3)).unwrap();
        assert_eq!(zero.bilinear_eval(&[c(1.0); 3], &[c(2.0); 3]).unwrap(), c(0.0));
    }

    #[test]
    fn pairing_with_phi_d_is_two_to_the_d() {
        for d in 1..=4 {
            let phi = phi_d_symbol(d).unwrap();
            let h = build_hankel(&Symbol::from_analytic(&phi), &IndexSetSpec::DivisorClosed { threshold: 1 })
                .unwrap();
            let a = h.coefficient_vector(&phi).unwrap();
            let b = h.coefficient_vector(&DirichletPolynomial::constant(c(1.0))).unwrap();
            let pairing = h.bilinear_eval(&a, &b).unwrap();
            assert_eq!(pairing, c(2f64.powi(d as i32)));
            assert_eq!(phi.inner_product(&phi), pairing);
        }
    }

    #[test]
    fn skew_form_is_the_primitive_pairing() {
        // ⟨∂^{-1}(f g'), φ⟩ = Σ a_m b_n log n / (log m + log n) ρ_{mn}
        let f = DirichletPolynomial::from_pairs([(1, c(0.5)), (2, c(1.0)), (3, Complex64::new(0.0, 2.0))]).unwrap();
        let g = DirichletPolynomial::from_pairs([(2, c(-1.0)), (5, c(3.0)), (6, Complex64::new(1.0, 1.0))]).unwrap();
        let rho = Symbol::from_rho(
            DirichletPolynomial::from_pairs((2..=40).map(|n| (n, Complex64::new(1.0 / n as f64, (n % 3) as f64)))).unwrap(),
        );
        let lhs = f.multiply(&g.derivative()).primitive().unwrap().inner_product(&rho.analytic());
        let h = build_hankel(&rho, &IndexSetSpec::RangeFull(6)).unwrap();
        let skew = schur_apply(&h, &WeightPattern::SkewLog);
        let a = h.coefficient_vector(&f).unwrap();
        let b = h.coefficient_vector(&g).unwrap();
        let rhs: Complex64 = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .map(|(i, j)| a[i] * skew[(i, j)] * b[j])
            .sum();
        assert!((lhs - rhs).norm() < 1e-13, "{lhs} vs {rhs}");
    }
}
