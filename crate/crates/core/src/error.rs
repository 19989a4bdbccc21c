use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid support: {0}")]
    InvalidSupport(String),

    #[error("graph is not simple: {0}")]
    NotSimple(String),

    #[error("empty graph")]
    EmptyGraph,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("length {n} exceeds the supported maximum {max}")]
    TooLong { n: usize, max: usize },

    #[error("infeasible plan: {0}")]
    InfeasiblePlan(String),

    #[error("estimated {estimate} steps exceeds the work cap of {cap}")]
    WorkCapExceeded { estimate: u128, cap: u128 },

    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(usize, usize),

    #[error("corrupt table data: {0}")]
    TableData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
