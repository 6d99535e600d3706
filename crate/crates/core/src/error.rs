use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid discriminant {disc}: {reason}")]
    Discriminant { disc: i64, reason: &'static str },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("element {element} is not valid in {ring}")]
    InvalidElement { element: String, ring: String },
    #[error("{0} is not an idempotent")]
    NotIdempotent(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("base ring mismatch: {0}")]
    BaseMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("the zero module is not a fractional ideal")]
    ZeroIdeal,
    #[error("invalid morphism: {0}")]
    Morphism(String),
    #[error("{law} fails at {witness}")]
    Axiom { law: &'static str, witness: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}
