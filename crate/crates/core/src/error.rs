use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid denominator: c must be nonzero")]
    InvalidDenominator,

    #[error("unsupported radicand {0}: complex values are not representable")]
    NegativeRadicand(String),

    #[error("radicand {0} is too large (must fit in 64 bits)")]
    RadicandTooLarge(String),

    #[error("cannot compare surds over different radicands ({0} and {1})")]
    IncompatibleSurds(u64, u64),

    #[error("invalid rotation: {0}")]
    InvalidRotation(String),

    #[error("ambiguous coding: orbit point at index {index} lies on a partition endpoint")]
    AmbiguousCoding { index: i64 },

    #[error("approximation horizon exceeded: coding at index {index} is not certified by the error bound")]
    HorizonExceeded { index: i64 },

    #[error("empty window: factor length {n} exceeds window length {len}")]
    EmptyWindow { n: usize, len: usize },

    #[error("undecidable on this window: {0}")]
    Undecidable(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("distance profile horizon {horizon} is too small (need at least {needed})")]
    InsufficientProfile { needed: u64, horizon: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("search budget exceeded after {nodes} nodes (reached length {reached})")]
    BudgetExceeded { nodes: u64, reached: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
