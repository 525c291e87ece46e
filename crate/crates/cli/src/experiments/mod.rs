pub mod embed;
pub mod hilbert;
pub mod inequalities;
pub mod nehari;
pub mod phi_d;
pub mod schatten;
pub mod schur;

use std::fs::File;
use std::path::Path;

use anyhow::{Context, Result};
use mhankel::hankel::Symbol;
use mhankel::{io, Complex64};
use nalgebra::DMatrix;

/// Independent seed for the `k`-th sub-experiment of a run.
pub fn derived_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_add(k.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn read_matrix_file(path: &Path) -> Result<DMatrix<Complex64>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    io::read_matrix(file).with_context(|| format!("reading matrix from {}", path.display()))
}

pub fn read_symbol_file(path: &Path) -> Result<Symbol> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    io::read_symbol(file).with_context(|| format!("reading symbol from {}", path.display()))
}
