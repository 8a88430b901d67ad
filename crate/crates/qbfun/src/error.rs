use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dimension vector entries must be positive")]
    NonPositiveDimension,
    #[error("({p},{q}) does not index a fundamental relative invariant")]
    NotAnInvariant { p: usize, q: usize },
    #[error("kappa {kappa} outside -1..={max}")]
    KappaOutOfRange { kappa: i64, max: i64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid lace diagram: {0}")]
    InvalidDiagram(String),
    #[error("superposed form at column {column}, constant {constant} has coefficient {coefficient} on s{label}")]
    Superposition {
        column: usize,
        constant: i64,
        label: usize,
        coefficient: u32,
    },
    #[error("transferred connections do not form an exact lace diagram: {0}")]
    RestrictionNotExact(String),
    #[error("budget exceeded: {what} reached {size}, limit {limit}")]
    Budget {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
    #[error("b-function does not split into integer-shifted linear factors: {0}")]
    NonLinearFactor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
