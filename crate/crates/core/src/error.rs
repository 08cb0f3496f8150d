use thiserror::Error;

use crate::order::EmbeddingViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("monomials live over different variable lists ({left} vs {right} variables)")]
    VariableMismatch { left: usize, right: usize },

    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeOverCap { degree: u32, cap: u32 },

    #[error("size {size} out of range (at most {max})")]
    SizeOutOfRange { size: usize, max: usize },

    #[error("monomial `{0}` is not a standard monomial of the ring")]
    NotStandard(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("cannot parse `{input}`: {reason}")]
    Syntax { input: String, reason: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("series {0} is not the Hilbert series of any monomial ideal")]
    Unrealizable(String),

    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("order is not an embedding order: {0}")]
    NotEmbedding(EmbeddingViolation),

    #[error("ideal is not z-stable (level {level} in degree {degree}); stabilize it first")]
    NotZStable { degree: u32, level: usize },

    #[error("exponent bounds must satisfy 2 <= e_1 <= ... <= e_n: {0}")]
    UnsortedBounds(String),

    #[error("field error: {0}")]
    Field(String),

    #[error("verification failed in degree {degree}: {reason}")]
    Verification { degree: u32, reason: String },

    #[error("iteration budget of {0} exhausted before reaching a fixed point")]
    NoFixpoint(usize),

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
