use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(i64, i64),
    #[error("{what} = {value} outside the supported range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("{n} does not divide {q}")]
    NotDivisor { n: i64, q: i64 },
    #[error("cyclotomic modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("non-integral result: {0}")]
    NonIntegral(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("the map does not permute the branch set")]
    NotBranchPermutation,
    #[error("elimination diverged at step '{step}': {detail}")]
    Divergence { step: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
