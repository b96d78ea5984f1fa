use thiserror::Error;

/// Errors surfaced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("delivery {value} to shelter {shelter} outside [0, {demand}]")]
    DeliveryOutOfRange {
        shelter: usize,
        value: f64,
        demand: f64,
    },

    #[error("invalid route partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("instance too large for {what}: n = {n} exceeds {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("shelter {0} cannot be served within the maximum route duration")]
    Unreachable(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
