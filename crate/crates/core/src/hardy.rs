//! Monte Carlo and quadrature estimates of `H^p` norms on the polytorus.
//!
//! A polynomial supported on the first `d` primes is integrated over `T^d`.
//! Samples are drawn in fixed-size chunks; chunk `c` of a run with seed `s`
//! reads ChaCha8 stream `c` keyed by `s`, and chunk statistics are merged in
//! chunk order. Estimates are therefore bitwise identical for every thread count.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::dirichlet::{CharacterPoint, DirichletPolynomial, SlicePolynomial};
use crate::{Error, Result};

/// Samples per chunk.
pub const CHUNK: usize = 8192;

/// Oversampling of slice quadrature relative to the number of coefficients.
pub const SLICE_OVERSAMPLING: usize = 8;

/// Deterministic stream of uniform points on `T^d`.
#[derive(Clone, Debug)]
pub struct TorusSampler {
    dimension: usize,
    seed: u64,
    counter: u64,
    rng: ChaCha8Rng,
}

impl TorusSampler {
    pub fn new(dimension: usize, seed: u64) -> Self {
        Self::with_stream(dimension, seed, 0)
    }

    fn with_stream(dimension: usize, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { dimension, seed, counter: 0, rng }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of points drawn so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Writes the next point as `(cos θ_j, sin θ_j)`, `θ_j = 2π u_j`.
    pub fn fill(&mut self, z: &mut [Complex64]) {
        debug_assert_eq!(z.len(), self.dimension);
        for zj in z.iter_mut() {
            let theta = TAU * self.rng.random::<f64>();
            *zj = Complex64::new(theta.cos(), theta.sin());
        }
        self.counter += 1;
    }

    pub fn next_point(&mut self) -> CharacterPoint {
        let mut z = vec![Complex64::new(0.0, 0.0); self.dimension];
        self.fill(&mut z);
        CharacterPoint::new(z).expect("sampled points are unimodular")
    }
}

/// Mean of an estimated quantity with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√samples`.
    pub stderr: f64,
    pub samples: usize,
}

impl McEstimate {
    fn exact(value: f64, samples: usize) -> Self {
        Self { mean: value, stderr: 0.0, samples }
    }
}

/// Count, mean and sum of squared deviations of a block of samples.
#[derive(Clone, Copy, Debug)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    const EMPTY: Self = Self { count: 0.0, mean: 0.0, m2: 0.0 };

    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.count;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Self {
            count,
            mean: self.mean + delta * other.count / count,
            m2: self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        }
    }
}

/// Coefficients with their exponent vectors, ready for repeated evaluation.
struct Compiled {
    dimension: usize,
    terms: Vec<(Vec<u32>, u32, Complex64)>,
    degree: usize,
}

impl Compiled {
    fn new(f: &DirichletPolynomial) -> Self {
        let dimension = f.dimension();
        let terms = f
            .iter()
            .map(|(n, c)| {
                let kappa = arith::factorize(n).expect("support is validated at construction");
                let mut exps = kappa.exponents().to_vec();
                exps.resize(dimension, 0);
                (exps, kappa.order(), c)
            })
            .collect();
        Self { dimension, terms, degree: f.degree() as usize }
    }

    fn monomial(exps: &[u32], z: &[Complex64]) -> Complex64 {
        exps.iter()
            .zip(z)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, zj)| zj.powu(e))
            .product()
    }

    fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|(exps, _, c)| c * Self::monomial(exps, z)).sum()
    }

    fn slice_into(&self, z: &[Complex64], coeffs: &mut [Complex64]) {
        coeffs.fill(Complex64::new(0.0, 0.0));
        for (exps, order, c) in &self.terms {
            coeffs[*order as usize] += c * Self::monomial(exps, z);
        }
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("exponent p must be positive, got {p}")));
    }
    Ok(())
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples, got {samples}")));
    }
    Ok(())
}

fn min_grid(degree: usize) -> usize {
    SLICE_OVERSAMPLING * (degree + 1)
}

/// Averages `g(z)` over `samples` uniform points of `T^dimension`.
///
/// `family` selects a disjoint block of streams, so that estimates sharing a
/// seed but differing in `family` are independent.
fn sample_mean<G>(dimension: usize, samples: usize, seed: u64, family: u32, g: G) -> Moments
where
    G: Fn(&[Complex64]) -> f64 + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let stream = (u64::from(family) << 32) | chunk as u64;
            let mut sampler = TorusSampler::with_stream(dimension, seed, stream);
            let mut z = vec![Complex64::new(0.0, 0.0); dimension];
            let mut m = Moments::EMPTY;
            for _ in 0..CHUNK.min(samples - chunk * CHUNK) {
                sampler.fill(&mut z);
                m.push(g(&z));
            }
            m
        })
        .collect();
    partial.into_iter().fold(Moments::EMPTY, Moments::merge)
}

/// `p`-th root of a mean, with the standard error carried by the delta method.
fn root_estimate(m: Moments, p: f64, samples: usize) -> McEstimate {
    let se_mean = (m.m2 / (m.count - 1.0) / m.count).sqrt();
    if m.mean <= 0.0 {
        return McEstimate { mean: 0.0, stderr: 0.0, samples };
    }
    let mean = m.mean.powf(1.0 / p);
    McEstimate {
        mean,
        stderr: mean / (p * m.mean) * se_mean,
        samples,
    }
}

fn mc_family(f: &DirichletPolynomial, p: f64, samples: usize, seed: u64, family: u32) -> Result<McEstimate> {
    check_exponent(p)?;
    check_samples(samples)?;
    if f.is_zero() {
        return Ok(McEstimate::exact(0.0, samples));
    }
    if f.is_constant() {
        return Ok(McEstimate::exact(f.coeff(1).norm(), samples));
    }
    let compiled = Compiled::new(f);
    let m = sample_mean(compiled.dimension, samples, seed, family, |z| compiled.evaluate(z).norm().powf(p));
    Ok(root_estimate(m, p, samples))
}

/// Monte Carlo estimate of `‖F‖_{H^p} = (∫_{T^d} |F(z)|^p dz)^{1/p}`.
pub fn mc_hp_norm(f: &DirichletPolynomial, p: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    mc_family(f, p, samples, seed, 0)
}

/// `H^p(T)` norm of the slice `w ↦ F(zw)` by the trapezoid rule on `grid` points.
pub fn slice_hp_norm(f: &DirichletPolynomial, p: f64, z: &CharacterPoint, grid: usize) -> Result<f64> {
    check_exponent(p)?;
    let slice = f.slice(z)?;
    let needed = min_grid(slice.degree());
    if grid < needed {
        return Err(Error::InvalidParameter(format!("grid {grid} below the required {needed}")));
    }
    Ok(slice.hp_norm_on_grid(p, grid))
}

/// Monte Carlo over `z` of `slice_hp_norm(F, p, z)^p`, then the `p`-th root.
pub fn nested_hp_norm(
    f: &DirichletPolynomial,
    p: f64,
    samples: usize,
    grid: usize,
    seed: u64,
) -> Result<McEstimate> {
    check_exponent(p)?;
    check_samples(samples)?;
    let needed = min_grid(f.degree() as usize);
    if grid < needed {
        return Err(Error::InvalidParameter(format!("grid {grid} below the required {needed}")));
    }
    if f.is_zero() {
        return Ok(McEstimate::exact(0.0, samples));
    }
    if f.is_constant() {
        return Ok(McEstimate::exact(f.coeff(1).norm(), samples));
    }
    let compiled = Compiled::new(f);
    let nodes: Vec<Complex64> = (0..grid).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / grid as f64)).collect();
    let m = sample_mean(compiled.dimension, samples, seed, 0, |z| {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); compiled.degree + 1];
        compiled.slice_into(z, &mut coeffs);
        let slice = SlicePolynomial::new(coeffs);
        nodes.iter().map(|&w| slice.evaluate(w).norm().powf(p)).sum::<f64>() / grid as f64
    });
    Ok(root_estimate(m, p, samples))
}

/// `(Σ |a_n|² / d(n))^{1/2}`, a lower bound for `‖f‖_{H¹}`.
pub fn helson_lower(f: &DirichletPolynomial) -> f64 {
    f.iter()
        .map(|(n, c)| c.norm_sqr() / arith::divisor_count(n).expect("support is validated at construction") as f64)
        .sum::<f64>()
        .sqrt()
}

/// `Σ_m ‖P_m f‖_{H¹}/(m+1)` over the nonempty homogeneity levels, each level
/// estimated independently and the standard errors added in quadrature.
pub fn hardy_homog_sum(f: &DirichletPolynomial, samples: usize, seed: u64) -> Result<McEstimate> {
    check_samples(samples)?;
    let (mut mean, mut variance) = (0.0, 0.0);
    for (m, part) in f.homogeneous_parts() {
        let e = mc_family(&part, 1.0, samples, seed, m + 1)?;
        let weight = 1.0 / f64::from(m + 1);
        mean += weight * e.mean;
        variance += (weight * e.stderr).powi(2);
    }
    Ok(McEstimate { mean, stderr: variance.sqrt(), samples })
}

/// Both sides of the one-variable Hardy inequality
/// `Σ |b_m|/(m+1) ≤ π ‖Σ b_m w^m‖_{H¹(T)}`, the norm by trapezoid quadrature.
pub fn hardy_inequality_sides(b: &SlicePolynomial, grid: usize) -> Result<(f64, f64)> {
    let needed = min_grid(b.degree());
    if grid < needed {
        return Err(Error::InvalidParameter(format!("grid {grid} below the required {needed}")));
    }
    let lhs = b.coeffs().iter().enumerate().map(|(m, c)| c.norm() / (m + 1) as f64).sum();
    Ok((lhs, PI * b.hp_norm_on_grid(1.0, grid)))
}
