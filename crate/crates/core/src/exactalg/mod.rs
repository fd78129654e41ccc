//! Exact linear algebra and the brute-force Hochschild oracles.

mod bimodule;
mod matrix;
mod oracle;

use thiserror::Error;

pub use bimodule::BimoduleRep;
pub use matrix::{is_prime, ExactMatrix, Field, SparseRow};
pub use oracle::{Oracle, OracleLimits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("an entry has a denominator divisible by {0}")]
    DenominatorDivisibleByPrime(u64),
    #[error("dimension guard exceeded: algebra dimension {dim} > limit {limit}")]
    GuardExceeded { dim: usize, limit: usize },
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("cohomology degree {0} is not supported")]
    DegreeOutOfRange(usize),
    #[error("cyclic quiver: the path algebra is infinite dimensional")]
    CyclicQuiver,
    #[error("internal error: {0}")]
    Internal(String),
}
