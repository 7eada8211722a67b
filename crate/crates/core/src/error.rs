use thiserror::Error;

/// Errors produced by rule-set construction, validation and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a move must be a nonzero vector")]
    ZeroMove,

    #[error("duplicate move {0:?} in rule set")]
    DuplicateMove(Vec<i64>),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension {d} exceeds the solver cap of {cap}")]
    DimensionCapExceeded { d: usize, cap: usize },

    #[error("rule set is not squarefree: move {0:?} has a positive part other than a unit vector")]
    NotSquarefree(Vec<i64>),

    #[error("invalid weight certificate: {0}")]
    InvalidCertificate(String),

    #[error("rule set fails the game axioms: pointed={pointed}, missing orthant axes {missing_axes:?}")]
    InvalidGame {
        pointed: bool,
        missing_axes: Vec<usize>,
    },

    #[error("region budget must be nonnegative")]
    NegativeBudget,

    #[error("region exceeds the cap of {cap} positions")]
    RegionTooLarge { cap: usize },

    #[error("position {0:?} is outside the solved region")]
    NotInRegion(Vec<u64>),

    #[error("heap size {size} out of range 1..={d}")]
    HeapSizeOutOfRange { size: usize, d: usize },

    #[error("produced heap size {0} equals the consumed size; the move would not decrease that heap count")]
    ProducedEqualsConsumed(usize),

    #[error("malformed octal code {code:?}: {reason}")]
    MalformedOctal { code: String, reason: String },

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
