use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{0} is not defined for the zero polynomial")]
    ZeroPolynomial(&'static str),

    #[error("not divisible by (1 - q): remainder {remainder} (value at q = 1)")]
    NotDivisible { remainder: i64 },

    #[error("negative argument {0} to the q-integer")]
    NegativeQInteger(i64),

    #[error("invalid fraction: {0}")]
    InvalidFraction(String),

    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),

    #[error("expected a fraction greater than 1, got {0}")]
    NotGreaterThanOne(String),

    #[error("matrix is not invertible over Z[q, q^-1]: determinant {0}")]
    NotInvertible(String),

    #[error("integer matrix has determinant {0}; only SL(2,Z) elements are words in R, L, S")]
    NotUnimodular(i64),

    #[error("malformed generator word: {0}")]
    InvalidWord(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("brute-force closure enumeration is capped at {cap} vertices, quiver has {n}")]
    TooManyVertices { n: usize, cap: usize },

    #[error("closure DP needs a fence, flat or circular quiver")]
    Unstructured,

    #[error("trace reduction did not terminate after {rounds} rounds; last matrix {state}")]
    ReductionDiverged { rounds: usize, state: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
