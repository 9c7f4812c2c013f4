use thiserror::Error;

/// Errors raised by the algebra, trace and ideal machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    /// `p(ε) ≠ 0`, so `(q - ε)` does not divide `p`.
    #[error("not divisible by (q - e): value at q = e is {0}")]
    NotDivisible(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("derivation violates the defining relation for pairs {0:?}")]
    RelationViolation(Vec<(usize, usize)>),

    #[error("exponent {exponent:?} has a negative entry at non-invertible index {index}")]
    InvertibilityViolation { exponent: Vec<i64>, index: usize },

    #[error("decomposition error: {0}")]
    Decomposition(String),

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("normalization error: {0}")]
    Normalization(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("element is not central: {0}")]
    NotCentral(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
