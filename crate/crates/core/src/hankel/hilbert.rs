use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use super::spectral::{symmetric_eigenvalues, LinearOperator, SpectralResult, START_SEED};
use crate::{Error, Result};

/// Sizes from which additive kernels are applied by FFT convolution.
const FFT_THRESHOLD: usize = 256;
const ROW_BLOCK: usize = 64;

/// The Hilbert-type matrices of the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HilbertVariant {
    /// `1/(√(mn) log(mn))` on `{2, …, N}`.
    #[serde(rename = "mult")]
    Mult,
    /// As `Mult` on `{1, …, N}`, with the `(1, 1)` entry set to zero.
    #[serde(rename = "quehilbert")]
    QueHilbert,
    /// `1/(m+n)`, `m, n = 1..N`.
    #[serde(rename = "ahilb1")]
    AHilb1,
    /// `1/(m+n+1)`, `m, n = 0..N-1`.
    #[serde(rename = "shifted", alias = "additive-shifted")]
    Shifted,
    /// `1/(m+n)`, `m, n = 0..N-1`, zero at `(0, 0)`.
    #[serde(rename = "ahilb4")]
    AHilb4,
    /// `1/(√(xy) log(xy))` with `x = m + 1/2`, `y = n + 1/2`, `m, n = 1..N`.
    #[serde(rename = "mult-shifted")]
    MultShifted,
}

impl HilbertVariant {
    pub const ALL: [Self; 6] = [
        Self::Mult,
        Self::QueHilbert,
        Self::AHilb1,
        Self::Shifted,
        Self::AHilb4,
        Self::MultShifted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Mult => "mult",
            Self::QueHilbert => "quehilbert",
            Self::AHilb1 => "ahilb1",
            Self::Shifted => "shifted",
            Self::AHilb4 => "ahilb4",
            Self::MultShifted => "mult-shifted",
        }
    }

    /// Whether the entries are a function of `m + n`.
    pub fn is_additive(self) -> bool {
        matches!(self, Self::AHilb1 | Self::Shifted | Self::AHilb4)
    }

    /// Dimension of the truncation at parameter `n`.
    pub fn dim(self, n: usize) -> usize {
        match self {
            Self::Mult => n.saturating_sub(1),
            _ => n,
        }
    }
}

impl fmt::Display for HilbertVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HilbertVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mult" => Ok(Self::Mult),
            "quehilbert" => Ok(Self::QueHilbert),
            "ahilb1" => Ok(Self::AHilb1),
            "shifted" | "additive-shifted" => Ok(Self::Shifted),
            "ahilb4" => Ok(Self::AHilb4),
            "mult-shifted" => Ok(Self::MultShifted),
            other => Err(Error::UnknownVariant(other.to_string())),
        }
    }
}

/// A real symmetric operator on `R^dim`.
pub trait SymmetricOperator {
    fn dim(&self) -> usize;
    fn apply_sym(&self, x: &[f64], y: &mut [f64]);
}

impl SymmetricOperator for DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply_sym(&self, x: &[f64], y: &mut [f64]) {
        y.fill(0.0);
        for (col, &xj) in self.column_iter().zip(x) {
            for (yi, &a) in y.iter_mut().zip(col.iter()) {
                *yi += a * xj;
            }
        }
    }
}

struct Convolution {
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    spectrum: Vec<Complex64>,
}

enum Kernel {
    /// `s_m s_n / (l_m + l_n)`, zero where the denominator vanishes.
    LogCauchy { scale: Vec<f64>, logs: Vec<f64>, zero_logs: usize },
    /// `h[i + j]`.
    Additive { h: Vec<f64>, fft: Option<Convolution> },
}

/// A Hilbert-type matrix whose entries are generated on the fly.
pub struct HilbertKernel {
    variant: HilbertVariant,
    n: usize,
    kernel: Kernel,
}

impl HilbertKernel {
    pub fn new(variant: HilbertVariant, n: usize) -> Result<Self> {
        let dim = variant.dim(n);
        if dim == 0 {
            return Err(Error::InvalidParameter(format!("N = {n} gives an empty {variant} matrix")));
        }
        let kernel = match variant {
            HilbertVariant::Mult | HilbertVariant::QueHilbert | HilbertVariant::MultShifted => {
                let points: Vec<f64> = match variant {
                    HilbertVariant::Mult => (2..=n).map(|m| m as f64).collect(),
                    HilbertVariant::QueHilbert => (1..=n).map(|m| m as f64).collect(),
                    _ => (1..=n).map(|m| m as f64 + 0.5).collect(),
                };
                let logs: Vec<f64> = points.iter().map(|x| x.ln()).collect();
                Kernel::LogCauchy {
                    scale: points.iter().map(|x| x.sqrt().recip()).collect(),
                    zero_logs: logs.iter().take_while(|&&l| l == 0.0).count(),
                    logs,
                }
            }
            _ => {
                let h: Vec<f64> = (0..2 * dim - 1)
                    .map(|s| match variant {
                        HilbertVariant::AHilb1 => 1.0 / (s + 2) as f64,
                        HilbertVariant::Shifted => 1.0 / (s + 1) as f64,
                        _ if s == 0 => 0.0,
                        _ => 1.0 / s as f64,
                    })
                    .collect();
                let fft = (dim >= FFT_THRESHOLD).then(|| Convolution::new(&h, dim));
                Kernel::Additive { h, fft }
            }
        };
        Ok(Self { variant, n, kernel })
    }

    pub fn variant(&self) -> HilbertVariant {
        self.variant
    }

    /// The truncation parameter `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match &self.kernel {
            Kernel::LogCauchy { scale, logs, .. } => {
                let total = logs[i] + logs[j];
                if total == 0.0 {
                    0.0
                } else {
                    scale[i] * scale[j] / total
                }
            }
            Kernel::Additive { h, .. } => h[i + j],
        }
    }

    pub fn dense(&self) -> DMatrix<f64> {
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |i, j| self.entry(i, j))
    }
}

impl Convolution {
    fn new(h: &[f64], dim: usize) -> Self {
        let len = (3 * dim - 2).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);
        let mut spectrum = vec![Complex64::new(0.0, 0.0); len];
        for (s, &v) in spectrum.iter_mut().zip(h) {
            s.re = v;
        }
        forward.process(&mut spectrum);
        Self { len, forward, inverse, spectrum }
    }

    /// `y_i = Σ_j h[i + j] x_j` as the linear convolution of `h` with reversed `x`.
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let dim = x.len();
        let mut buf = vec![Complex64::new(0.0, 0.0); self.len];
        for (b, &v) in buf.iter_mut().zip(x.iter().rev()) {
            b.re = v;
        }
        self.forward.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= s;
        }
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.len as f64;
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = buf[i + dim - 1].re * scale;
        }
    }
}

impl HilbertKernel {
    /// `(y_re, y_im) = K (x_re, x_im)`, sharing one pass over the kernel entries.
    fn apply_pair(&self, x: [&[f64]; 2], y: [&mut [f64]; 2]) {
        match &self.kernel {
            Kernel::LogCauchy { scale, logs, zero_logs } => {
                let t: Vec<(f64, f64)> = scale.iter().zip(x[0].iter().zip(x[1])).map(|(s, (a, b))| (s * a, s * b)).collect();
                let mut out = vec![(0.0, 0.0); t.len()];
                out.par_chunks_mut(ROW_BLOCK).enumerate().for_each(|(block, rows)| {
                    for (k, yi) in rows.iter_mut().enumerate() {
                        let i = block * ROW_BLOCK + k;
                        let li = logs[i];
                        let start = if li == 0.0 { *zero_logs } else { 0 };
                        let (mut re, mut im) = (0.0, 0.0);
                        for ((a, b), lj) in t[start..].iter().zip(&logs[start..]) {
                            let w = 1.0 / (li + lj);
                            re += a * w;
                            im += b * w;
                        }
                        *yi = (scale[i] * re, scale[i] * im);
                    }
                });
                let [y_re, y_im] = y;
                for ((r, i), (a, b)) in y_re.iter_mut().zip(y_im.iter_mut()).zip(out) {
                    *r = a;
                    *i = b;
                }
            }
            _ => {
                let [y_re, y_im] = y;
                self.apply_sym(x[0], y_re);
                self.apply_sym(x[1], y_im);
            }
        }
    }
}

impl SymmetricOperator for HilbertKernel {
    fn dim(&self) -> usize {
        self.variant.dim(self.n)
    }

    fn apply_sym(&self, x: &[f64], y: &mut [f64]) {
        match &self.kernel {
            Kernel::LogCauchy { scale, logs, zero_logs } => {
                let t: Vec<f64> = scale.iter().zip(x).map(|(s, v)| s * v).collect();
                y.par_chunks_mut(ROW_BLOCK).enumerate().for_each(|(block, out)| {
                    for (k, yi) in out.iter_mut().enumerate() {
                        let i = block * ROW_BLOCK + k;
                        let li = logs[i];
                        let start = if li == 0.0 { *zero_logs } else { 0 };
                        let sum: f64 = t[start..]
                            .iter()
                            .zip(&logs[start..])
                            .map(|(tj, lj)| tj / (li + lj))
                            .sum();
                        *yi = scale[i] * sum;
                    }
                });
            }
            Kernel::Additive { fft: Some(conv), .. } => conv.apply(x, y),
            Kernel::Additive { h, fft: None } => {
                for (i, yi) in y.iter_mut().enumerate() {
                    *yi = h[i..].iter().zip(x).map(|(a, b)| a * b).sum();
                }
            }
        }
    }
}

impl LinearOperator for HilbertKernel {
    fn nrows(&self) -> usize {
        self.dim()
    }

    fn ncols(&self) -> usize {
        self.dim()
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        let dim = self.dim();
        let re: Vec<f64> = x.iter().map(|z| z.re).collect();
        let im: Vec<f64> = x.iter().map(|z| z.im).collect();
        let (mut yr, mut yi) = (vec![0.0; dim], vec![0.0; dim]);
        self.apply_pair([&re, &im], [&mut yr, &mut yi]);
        for (out, (a, b)) in y.iter_mut().zip(yr.into_iter().zip(yi)) {
            *out = Complex64::new(a, b);
        }
    }

    fn apply_adjoint(&self, x: &[Complex64], y: &mut [Complex64]) {
        self.apply(x, y)
    }
}

/// `N × N` matrix of an additive variant, or of the shifted multiplicative one.
pub fn additive_hilbert_matrix(variant: &str, n: usize) -> Result<DMatrix<f64>> {
    let variant: HilbertVariant = variant.parse()?;
    if matches!(variant, HilbertVariant::Mult | HilbertVariant::QueHilbert) {
        return Err(Error::UnknownVariant(format!("{variant} is not an additive variant")));
    }
    Ok(HilbertKernel::new(variant, n)?.dense())
}

/// Operator norm of a real symmetric matrix from its eigenvalues.
pub fn symmetric_dense_norm(m: &DMatrix<f64>) -> Result<f64> {
    Ok(symmetric_eigenvalues(m)?.iter().fold(0.0, |acc, l| acc.max(l.abs())))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn ritz_norm(alpha: &[f64], beta: &[f64]) -> Result<f64> {
    let k = alpha.len();
    let t = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    symmetric_dense_norm(&t)
}

/// Largest `|λ|` of a symmetric operator by Lanczos with full reorthogonalization.
///
/// The Ritz estimate is checked every few steps and the run stops when it moves
/// by at most `tol · max(1, value)` between checks, or when the Krylov space is
/// invariant. Ritz values never exceed the true norm.
pub fn lanczos_norm<A: SymmetricOperator + ?Sized>(a: &A, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    const CHECK_EVERY: usize = 5;
    let dim = a.dim();
    if dim == 0 {
        return Ok(SpectralResult { value: 0.0, iterations: 0, residual: 0.0, converged: true });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut q: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let qn = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|v| *v /= qn);

    let limit = max_iter.min(dim).max(1);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let mut w = vec![0.0; dim];
    let mut previous = f64::NAN;
    let mut residual = f64::INFINITY;
    for k in 1..=limit {
        a.apply_sym(&q, &mut w);
        let ak = dot(&q, &w);
        alpha.push(ak);
        basis.push(std::mem::take(&mut q));
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for v in &basis {
                let c = dot(v, &w);
                w.iter_mut().zip(v).for_each(|(wi, vi)| *wi -= c * vi);
            }
        }
        let bk = dot(&w, &w).sqrt();
        let invariant = bk <= 1e-14 * ak.abs().max(1.0);
        if invariant || k == limit || k % CHECK_EVERY == 0 || k <= 2 {
            let value = ritz_norm(&alpha, &beta)?;
            if previous.is_finite() {
                residual = (value - previous).abs() / value.max(1.0);
            }
            if invariant || k == dim {
                return Ok(SpectralResult { value, iterations: k, residual: 0.0, converged: true });
            }
            if residual <= tol {
                return Ok(SpectralResult { value, iterations: k, residual, converged: true });
            }
            previous = value;
        }
        beta.push(bk);
        q = w.iter().map(|v| v / bk).collect();
    }
    Ok(SpectralResult { value: previous, iterations: limit, residual, converged: false })
}
