//! Random test objects for the experiments.

use mhankel::arith;
use mhankel::dirichlet::DirichletPolynomial;
use mhankel::hankel::Symbol;
use mhankel::Complex64;
use nalgebra::DMatrix;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Rng64 = ChaCha8Rng;

pub fn complex_normal(rng: &mut Rng64) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Gaussian matrix with row and column counts uniform in `1..=max_size`.
pub fn gaussian_matrix(rng: &mut Rng64, max_size: usize) -> DMatrix<Complex64> {
    let rows = rng.random_range(1..=max_size);
    let cols = rng.random_range(1..=max_size);
    DMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Polynomial with `1..=terms` distinct indices drawn from `pool`.
fn sparse_polynomial<F>(rng: &mut Rng64, pool: &[u64], terms: usize, mut coefficient: F) -> DirichletPolynomial
where
    F: FnMut(&mut Rng64) -> Complex64,
{
    let count = rng.random_range(1..=terms.min(pool.len()));
    let mut picks = sample(rng, pool.len(), count).into_vec();
    picks.sort_unstable();
    let pairs: Vec<(u64, Complex64)> = picks.into_iter().map(|i| (pool[i], coefficient(rng))).collect();
    DirichletPolynomial::from_pairs(pairs).expect("pool entries are positive and distinct")
}

/// Symbol with Gaussian coefficients on up to `terms` indices in `1..=max_n`.
pub fn gaussian_symbol(rng: &mut Rng64, max_n: u64, terms: usize) -> Symbol {
    let pool: Vec<u64> = (1..=max_n).collect();
    Symbol::from_rho(sparse_polynomial(rng, &pool, terms, complex_normal))
}

/// Symbol with coefficients uniform in `[0, 1)` on up to `terms` indices in `1..=max_n`.
pub fn nonnegative_symbol(rng: &mut Rng64, max_n: u64, terms: usize) -> Symbol {
    let pool: Vec<u64> = (1..=max_n).collect();
    Symbol::from_rho(sparse_polynomial(rng, &pool, terms, |r| Complex64::new(r.random(), 0.0)))
}

/// Symbol with Gaussian coefficients on up to `terms` indices `n ≤ max_n` with `Ω(n) ≥ 2`.
pub fn composite_symbol(rng: &mut Rng64, max_n: u64, terms: usize) -> Symbol {
    let pool: Vec<u64> = (4..=max_n).filter(|&n| arith::omega(n).is_ok_and(|w| w >= 2)).collect();
    Symbol::from_rho(sparse_polynomial(rng, &pool, terms, complex_normal))
}

/// Indices `2^a 3^b 5^c` with `a, b, c ∈ {0, 1, 2}`.
pub fn smooth_support() -> Vec<u64> {
    let mut pool = Vec::with_capacity(27);
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                pool.push(2u64.pow(a) * 3u64.pow(b) * 5u64.pow(c));
            }
        }
    }
    pool.sort_unstable();
    pool
}

/// Polynomial with 1 to 8 Gaussian coefficients on [`smooth_support`].
pub fn smooth_polynomial(rng: &mut Rng64) -> DirichletPolynomial {
    sparse_polynomial(rng, &smooth_support(), 8, complex_normal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn families_respect_their_supports() {
        let mut rng = Rng64::seed_from_u64(7);
        for _ in 0..50 {
            let m = gaussian_matrix(&mut rng, 6);
            assert!((1..=6).contains(&m.nrows()) && (1..=6).contains(&m.ncols()));
            let s = composite_symbol(&mut rng, 500, 10);
            assert!(s.support().all(|n| n <= 500 && arith::omega(n).unwrap() >= 2));
            let s = nonnegative_symbol(&mut rng, 100, 5);
            assert!((1..=5).contains(&s.rho().len()) || s.rho().is_zero());
            assert!(s.rho().iter().all(|(_, c)| c.re >= 0.0 && c.im == 0.0));
            let f = smooth_polynomial(&mut rng);
            assert!(f.len() <= 8 && f.support().all(|n| smooth_support().contains(&n)));
        }
        assert_eq!(smooth_support().len(), 27);
    }

    #[test]
    fn draws_are_reproducible() {
        let a = gaussian_symbol(&mut Rng64::seed_from_u64(3), 200, 6);
        let b = gaussian_symbol(&mut Rng64::seed_from_u64(3), 200, 6);
        assert_eq!(a, b);
    }
}
