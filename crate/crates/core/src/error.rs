use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chart mismatch: `{0}` vs `{1}`")]
    ChartMismatch(String, String),
    #[error("unknown variable `{0}` in chart `{1}`")]
    UnknownVariable(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("substitution does not respect relation `{0}`")]
    RelationViolation(String),
    #[error("image of `{0}` is not invertible")]
    NotInvertible(String),
    #[error("non-polynomial dependence on `{0}`")]
    NonPolynomial(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("level {level} exceeds the truncation limit {max}")]
    LevelOverflow { level: usize, max: usize },
    #[error("operation needs level >= {min}, got {level}")]
    LevelUnderflow { level: usize, min: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not invariant: {0}")]
    NotInvariant(String),
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("config error: {0}")]
    Config(String),
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
