//! Numerical laboratory for multiplicative Hankel forms on the Hardy space of
//! Dirichlet series.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: primes, factorizations and the Bohr correspondence `n <-> κ(n)`.
//! - [`dirichlet`]: finitely supported Dirichlet polynomials, their calculus
//!   and the homogeneous decomposition.
//! - [`hankel`]: truncated Hankel matrices `(ρ_{mn})`, Schur multiplier weight
//!   patterns, spectral and Schatten norms, and the named constructions
//!   (prime-pair embedding, `φ_d`, Hilbert matrices, the Nehari symbol).
//! - [`hardy`]: Monte Carlo and quadrature estimates of `H^p` norms on the
//!   polytorus together with the inequalities that need them.
//! - [`io`]: the CSV formats for symbols, polynomials and matrices.

pub mod arith;
pub mod dirichlet;
mod error;
pub mod hankel;
pub mod hardy;
pub mod io;

pub use error::{Error, Result};
pub use num_complex::Complex64;
