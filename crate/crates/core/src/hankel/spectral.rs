use faer::Mat;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::HankelMatrix;
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Seed of the deterministic start vector used by the iterative solvers.
pub(crate) const START_SEED: u64 = 0x4d48_414e_4b45_4c31;

/// Outcome of an iterative norm computation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub value: f64,
    pub iterations: usize,
    /// Relative change of the last step, `|v_k - v_{k-1}| / max(1, v_k)`.
    pub residual: f64,
    pub converged: bool,
}

/// A linear map `C^ncols -> C^nrows` with its adjoint.
pub trait LinearOperator {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// `y = A x`.
    fn apply(&self, x: &[Complex64], y: &mut [Complex64]);
    /// `y = A* x`.
    fn apply_adjoint(&self, x: &[Complex64], y: &mut [Complex64]);
}

impl LinearOperator for DMatrix<Complex64> {
    fn nrows(&self) -> usize {
        self.nrows()
    }

    fn ncols(&self) -> usize {
        self.ncols()
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.fill(Complex64::new(0.0, 0.0));
        for (col, &xj) in self.column_iter().zip(x) {
            if xj == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (yi, &a) in y.iter_mut().zip(col.iter()) {
                *yi += a * xj;
            }
        }
    }

    fn apply_adjoint(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (yj, col) in y.iter_mut().zip(self.column_iter()) {
            *yj = col.iter().zip(x).map(|(a, &xi)| a.conj() * xi).sum();
        }
    }
}

impl LinearOperator for HankelMatrix {
    fn nrows(&self) -> usize {
        self.dim()
    }

    fn ncols(&self) -> usize {
        self.dim()
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        self.entries().apply(x, y)
    }

    fn apply_adjoint(&self, x: &[Complex64], y: &mut [Complex64]) {
        self.entries().apply_adjoint(x, y)
    }
}

fn unit_start(dim: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = norm(&v);
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value by power iteration on `A*A`.
///
/// Stops when `|v_k - v_{k-1}| ≤ tol · max(1, v_k)`; otherwise returns the last
/// estimate with `converged = false` after `max_iter` steps.
pub fn spectral_norm<A: LinearOperator + ?Sized>(a: &A, tol: f64, max_iter: usize) -> SpectralResult {
    let (rows, cols) = (a.nrows(), a.ncols());
    if rows == 0 || cols == 0 {
        return SpectralResult { value: 0.0, iterations: 0, residual: 0.0, converged: true };
    }
    let mut x = unit_start(cols);
    let mut y = vec![Complex64::new(0.0, 0.0); rows];
    let mut z = vec![Complex64::new(0.0, 0.0); cols];
    let mut previous = f64::NAN;
    let mut residual = f64::INFINITY;
    for k in 1..=max_iter {
        a.apply(&x, &mut y);
        let value = norm(&y);
        if k > 1 {
            residual = (value - previous).abs() / value.max(1.0);
            if residual <= tol {
                return SpectralResult { value, iterations: k, residual, converged: true };
            }
        }
        a.apply_adjoint(&y, &mut z);
        let zn = norm(&z);
        if zn == 0.0 {
            return SpectralResult { value, iterations: k, residual: 0.0, converged: true };
        }
        x.iter_mut().zip(&z).for_each(|(xi, zi)| *xi = zi / zn);
        previous = value;
    }
    SpectralResult { value: previous, iterations: max_iter, residual, converged: false }
}

pub(crate) fn to_faer<T: Copy>(m: &DMatrix<T>) -> Mat<T> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// All singular values, in decreasing order, from a full SVD.
pub fn singular_values(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    if m.is_empty() {
        return Ok(Vec::new());
    }
    to_faer(m).singular_values().map_err(|_| Error::NoConvergence("SVD"))
}

pub fn largest_singular_value(m: &DMatrix<Complex64>) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

/// Eigenvalues of a real symmetric matrix, in increasing order.
pub(crate) fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    if m.is_empty() {
        return Ok(Vec::new());
    }
    to_faer(m)
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|_| Error::NoConvergence("symmetric eigensolver"))
}

/// `(Σ λ_k^p)^{1/p}` over the singular values.
pub fn schatten_norm(m: &DMatrix<Complex64>, p: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("Schatten exponent must be positive, got {p}")));
    }
    Ok(singular_values(m)?.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p))
}
