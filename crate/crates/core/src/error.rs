use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument must be a positive integer, got 0")]
    Zero,
    #[error("{0} has a prime factor beyond the prime table")]
    OutOfRange(u64),
    #[error("prime index {0} exceeds the prime table")]
    PrimeIndexOutOfRange(usize),
    #[error("integer overflow reconstructing n from its multi-index")]
    Overflow,
    #[error("constant term must vanish, found {0}")]
    NonzeroConstant(num_complex::Complex64),
    #[error("polynomial has a nonzero linear part (coefficient at prime {0})")]
    NonzeroLinear(u64),
    #[error("point has dimension {got} but the polynomial needs {needed}")]
    DimensionTooSmall { needed: usize, got: usize },
    #[error("coordinate {index} is not unimodular (|z| = {modulus})")]
    NotUnimodular { index: usize, modulus: f64 },
    #[error("support element {n} has Ω(n) = {omega} < 2")]
    LowOrderSupport { n: u64, omega: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("unknown variant `{0}`")]
    UnknownVariant(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("malformed csv: {0}")]
    Format(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
