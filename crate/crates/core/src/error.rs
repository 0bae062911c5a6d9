use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("diameter {delta} is below the minimum {min} for this construction")]
    InvalidDiameter { delta: u32, min: u32 },

    #[error("diameter {delta} exceeds the supported maximum {max}")]
    DiameterTooLarge { delta: u32, max: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{k} is not a unit modulo {n}")]
    NotAUnit { n: u32, k: u32 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("distance {value} is outside the alphabet 1..={delta}")]
    OutOfAlphabet { value: u32, delta: u32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("{what}: requested {requested}, budget is {limit}")]
    Budget {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
