use thiserror::Error;

/// Errors shared across the toolkit.
///
/// `PrecisionCap` is the ladder's terminal state: a caller asked for a
/// certification that did not materialize before the configured bit cap.
/// For nearest-integer work this usually signals a genuine exact hit or a
/// half-integer tie that only symbolic analysis can resolve.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precision cap of {cap} bits exceeded while {context}")]
    PrecisionCap { cap: u32, context: String },

    #[error("polynomial is not squarefree (gcd with derivative has degree > 0)")]
    NotSquarefree,

    #[error("polynomial has no root matching selector `{0}`")]
    SelectorNoMatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("comparison undecided at current enclosure radius: {0}")]
    Undecided(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("unsupported operand: {0}")]
    Unsupported(String),

    #[error("dual-route disagreement at n={n}: direct and trace distance enclosures are disjoint")]
    RouteDisagreement { n: u64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
