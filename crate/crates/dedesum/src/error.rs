use thiserror::Error;

/// Errors surfaced by the library. Every precondition failure names the
/// violated condition so that CLI users see exactly which hypothesis broke.
#[derive(Debug, Error)]
pub enum Error {
    #[error("determinant is {det}, must be 1")]
    DeterminantNotOne { det: String },

    #[error("level {level} does not divide lower-left entry {c}")]
    LevelDoesNotDivide { level: u64, c: String },

    #[error("gcd({c}, {d}) = {g}, bottom row must be coprime")]
    BottomRowNotCoprime { c: String, d: String, g: String },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u64, right: u64 },

    #[error("inadmissible character pair: {reason}")]
    InadmissiblePair { reason: String },

    #[error("character is not primitive: conductor {conductor} < modulus {modulus}")]
    NotPrimitive { conductor: u64, modulus: u64 },

    #[error("principal character rejected: {context}")]
    PrincipalCharacter { context: String },

    #[error("invalid character label {label:?}: {reason}")]
    InvalidLabel { label: String, reason: String },

    #[error("{op}: precondition violated: {condition}")]
    Precondition { op: String, condition: String },

    #[error("unknown suite name {name:?}")]
    UnknownSuite { name: String },

    #[error("fixture mismatch in {path}: {count} offending entries")]
    FixtureMismatch { path: String, count: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(op: &str, condition: impl Into<String>) -> Self {
        Error::Precondition {
            op: op.to_string(),
            condition: condition.into(),
        }
    }
}
