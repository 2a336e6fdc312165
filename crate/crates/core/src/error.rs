use thiserror::Error;

/// Errors raised by the library. The CLI maps `Input` and `Parse` to exit
/// code 2 and everything else to exit code 1.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmaError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("rank out of range: sl_{0} is not supported (need 2 <= n+1 <= 4)")]
    RankOutOfRange(usize),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("X_* violated: {0}")]
    XStarViolation(String),
    #[error("duplicate interpolation point {0}")]
    DuplicatePoint(String),
    #[error("field lacks a root of -1 of order {needed}: cyclotomic order must be divisible by {needed}")]
    MissingRoot { needed: u32 },
    #[error("ambient truncation too small: {0}")]
    AmbientTooSmall(String),
    #[error("dimension {size} exceeds the configured budget {limit}")]
    Budget { size: usize, limit: usize },
    #[error("module mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("annihilator support escapes the transversal: {0}")]
    SupportEscapes(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("module is not cyclic: {0}")]
    NotCyclic(String),
    #[error("overlapping supports: {0}")]
    OverlappingSupport(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),
}

impl EmaError {
    /// True for problems with the caller's input rather than the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, EmaError::Parse(_) | EmaError::Input(_))
    }
}

pub type Result<T> = std::result::Result<T, EmaError>;
