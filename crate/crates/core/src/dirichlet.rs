//! Dirichlet polynomials `f(s) = Σ a_n n^{-s}` with finite support.
//!
//! Coefficients live in a map sorted by `n`, so every iteration (and every
//! floating point sum built from one) runs in the same order. Every support
//! element is kept factorable over [`arith::default_table`], which is closed
//! under the products formed by [`DirichletPolynomial::multiply`].

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::arith::{self, MultiIndex};
use crate::{Error, Result};

const UNIMODULAR_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DirichletPolynomial {
    coeffs: BTreeMap<u64, Complex64>,
}

fn kappa(n: u64) -> MultiIndex {
    arith::factorize(n).expect("support elements are factorable by construction")
}

fn log_of(n: u64) -> f64 {
    arith::default_table().log_of_index(&kappa(n))
}

impl DirichletPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_pairs([(1, c)]).expect("1 is always factorable")
    }

    /// `c · n^{-s}`.
    pub fn monomial(n: u64, c: Complex64) -> Result<Self> {
        Self::from_pairs([(n, c)])
    }

    /// Sums repeated indices and drops zero coefficients.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Complex64)>,
    {
        let mut coeffs = BTreeMap::new();
        for (n, c) in pairs {
            arith::factorize(n)?;
            *coeffs.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(Self::normalized(coeffs))
    }

    fn normalized(mut coeffs: BTreeMap<u64, Complex64>) -> Self {
        coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    fn map_coeffs<F>(&self, mut f: F) -> Self
    where
        F: FnMut(u64, Complex64) -> Complex64,
    {
        Self::normalized(self.coeffs.iter().map(|(&n, &c)| (n, f(n, c))).collect())
    }

    pub fn coeff(&self, n: u64) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    /// Nonzero coefficients in increasing order of `n`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&n| n == 1)
    }

    /// Number of torus coordinates the Bohr lift depends on: the largest prime
    /// index dividing some support element.
    pub fn dimension(&self) -> usize {
        self.support().map(|n| kappa(n).dimension()).max().unwrap_or(0)
    }

    /// `max Ω(n)` over the support (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.support().map(|n| kappa(n).order()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (&n, &c) in &other.coeffs {
            *coeffs.entry(n).or_default() += c;
        }
        Self::normalized(coeffs)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_coeffs(|_, a| a * c)
    }

    /// Dirichlet convolution `(fg)_n = Σ_{d | n} f_d g_{n/d}`.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<u64, Complex64> = BTreeMap::new();
        for (&m, &a) in &self.coeffs {
            for (&n, &b) in &other.coeffs {
                let mn = m.checked_mul(n).expect("product index overflows u64");
                *coeffs.entry(mn).or_default() += a * b;
            }
        }
        Self::normalized(coeffs)
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(|_, c| c.conj())
    }

    /// `P_m f`: the coefficients with `Ω(n) = m`.
    pub fn homogeneous_part(&self, m: u32) -> Self {
        Self::normalized(
            self.coeffs
                .iter()
                .filter(|(&n, _)| kappa(n).order() == m)
                .map(|(&n, &c)| (n, c))
                .collect(),
        )
    }

    /// All nonempty homogeneous parts, keyed by `m`.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Self> {
        let mut parts: BTreeMap<u32, BTreeMap<u64, Complex64>> = BTreeMap::new();
        for (&n, &c) in &self.coeffs {
            parts.entry(kappa(n).order()).or_default().insert(n, c);
        }
        parts
            .into_iter()
            .map(|(m, coeffs)| (m, Self { coeffs }))
            .collect()
    }

    /// `Df = f'`: `a_n ↦ -a_n log n`.
    pub fn derivative(&self) -> Self {
        self.map_coeffs(|n, c| -c * log_of(n))
    }

    /// Primitive with vanishing constant term: `a_n ↦ -a_n / log n`.
    pub fn primitive(&self) -> Result<Self> {
        self.require_no_constant()?;
        Ok(self.map_coeffs(|n, c| -c / log_of(n)))
    }

    /// `R = Σ z_j ∂_{z_j}`: `a_n ↦ Ω(n) a_n`.
    pub fn radial_derivative(&self) -> Self {
        self.map_coeffs(|n, c| c * f64::from(kappa(n).order()))
    }

    /// `R^{-1}`: `a_n ↦ a_n / Ω(n)`, constant term 0.
    pub fn radial_primitive(&self) -> Result<Self> {
        self.require_no_constant()?;
        Ok(self.map_coeffs(|n, c| c / f64::from(kappa(n).order())))
    }

    fn require_no_constant(&self) -> Result<()> {
        match self.coeffs.get(&1) {
            Some(&c) => Err(Error::NonzeroConstant(c)),
            None => Ok(()),
        }
    }

    fn require_dimension(&self, got: usize) -> Result<()> {
        let needed = self.dimension();
        if got < needed {
            return Err(Error::DimensionTooSmall { needed, got });
        }
        Ok(())
    }

    /// `f_χ`: `a_n ↦ a_n χ^{κ(n)}`.
    pub fn twist(&self, chi: &CharacterPoint) -> Result<Self> {
        self.require_dimension(chi.dimension())?;
        Ok(self.map_coeffs(|n, c| c * chi.monomial(&kappa(n))))
    }

    /// The Bohr lift `Σ a_n z^{κ(n)}` evaluated at `z`.
    pub fn evaluate(&self, z: &CharacterPoint) -> Result<Complex64> {
        self.require_dimension(z.dimension())?;
        Ok(self.iter().map(|(n, c)| c * z.monomial(&kappa(n))).sum())
    }

    /// `F_z(w) = F(zw) = Σ_m P_m F(z) w^m`.
    pub fn slice(&self, z: &CharacterPoint) -> Result<SlicePolynomial> {
        self.require_dimension(z.dimension())?;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.degree() as usize + 1];
        for (n, c) in self.iter() {
            let k = kappa(n);
            coeffs[k.order() as usize] += c * z.monomial(&k);
        }
        Ok(SlicePolynomial { coeffs })
    }

    pub fn h2_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨f, g⟩ = Σ a_n conj(b_n)`.
    pub fn inner_product(&self, other: &Self) -> Complex64 {
        self.iter().map(|(n, a)| a * other.coeff(n).conj()).sum()
    }

    /// Writes `F = Σ_j z_j F_j` over `T^d`, assigning every monomial to its
    /// smallest prime. The `F_j` have disjoint supports after multiplication
    /// by `p_j`, so `Σ ‖F_j‖² = ‖F‖²`.
    pub fn linear_free_decompose(&self, d: usize) -> Result<LinearFreeDecomposition> {
        self.require_no_constant()?;
        let table = arith::default_table();
        let mut parts = vec![BTreeMap::new(); d];
        for (n, c) in self.iter() {
            let k = kappa(n);
            if k.order() == 1 {
                return Err(Error::NonzeroLinear(n));
            }
            if k.dimension() > d {
                return Err(Error::DimensionTooSmall {
                    needed: k.dimension(),
                    got: d,
                });
            }
            let j = k
                .exponents()
                .iter()
                .position(|&e| e > 0)
                .expect("n > 1 has a prime factor");
            let p = table.prime(j + 1)?;
            parts[j].insert(n / p, c);
        }
        let parts: Vec<Self> = parts.into_iter().map(Self::normalized).collect();
        let cost = parts.iter().map(Self::h2_norm).sum();
        Ok(LinearFreeDecomposition {
            parts,
            cost,
            bound: (d as f64).sqrt() * self.h2_norm(),
        })
    }
}

/// Output of [`DirichletPolynomial::linear_free_decompose`].
#[derive(Clone, Debug)]
pub struct LinearFreeDecomposition {
    /// `F_1, …, F_d`.
    pub parts: Vec<DirichletPolynomial>,
    /// Weak-product cost `Σ_j ‖z_j‖·‖F_j‖ = Σ_j ‖F_j‖` of this representation.
    pub cost: f64,
    /// `√d ‖F‖`.
    pub bound: f64,
}

impl Add for &DirichletPolynomial {
    type Output = DirichletPolynomial;

    fn add(self, rhs: Self) -> DirichletPolynomial {
        DirichletPolynomial::add(self, rhs)
    }
}

impl Sub for &DirichletPolynomial {
    type Output = DirichletPolynomial;

    fn sub(self, rhs: Self) -> DirichletPolynomial {
        DirichletPolynomial::add(self, &-rhs)
    }
}

impl Neg for &DirichletPolynomial {
    type Output = DirichletPolynomial;

    fn neg(self) -> DirichletPolynomial {
        self.map_coeffs(|_, c| -c)
    }
}

impl Mul for &DirichletPolynomial {
    type Output = DirichletPolynomial;

    fn mul(self, rhs: Self) -> DirichletPolynomial {
        self.multiply(rhs)
    }
}

/// A point `(χ(p_1), …, χ(p_d))` of the finite torus `T^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterPoint {
    values: Vec<Complex64>,
}

impl CharacterPoint {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        for (index, v) in values.iter().enumerate() {
            let modulus = v.norm();
            if (modulus - 1.0).abs() > UNIMODULAR_TOL {
                return Err(Error::NotUnimodular { index, modulus });
            }
        }
        Ok(Self { values })
    }

    pub fn from_angles(angles: &[f64]) -> Self {
        Self {
            values: angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect(),
        }
    }

    pub fn ones(d: usize) -> Self {
        Self {
            values: vec![Complex64::new(1.0, 0.0); d],
        }
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `z^κ`. The caller guarantees `κ` fits the dimension.
    pub fn monomial(&self, kappa: &MultiIndex) -> Complex64 {
        kappa
            .exponents()
            .iter()
            .zip(&self.values)
            .map(|(&e, z)| z.powu(e))
            .product()
    }
}

/// One-variable polynomial `c_0 + c_1 w + … + c_M w^M`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlicePolynomial {
    coeffs: Vec<Complex64>,
}

impl SlicePolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn evaluate(&self, w: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
    }

    /// `((1/grid) Σ_θ |F(e^{iθ})|^p)^{1/p}` on the uniform grid.
    pub fn hp_norm_on_grid(&self, p: f64, grid: usize) -> f64 {
        let step = std::f64::consts::TAU / grid as f64;
        let mean = (0..grid)
            .map(|k| self.evaluate(Complex64::from_polar(1.0, step * k as f64)).norm().powf(p))
            .sum::<f64>()
            / grid as f64;
        mean.powf(1.0 / p)
    }
}
