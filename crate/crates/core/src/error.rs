use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input `{arg}`: {reason}")]
    InvalidInput { arg: &'static str, reason: String },

    #[error("invalid quadrature config: {0}")]
    InvalidConfig(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("point {point} is outside the integration domain [{lo}, {hi}]")]
    OutsideDomain { point: f64, lo: f64, hi: f64 },

    #[error("point {point} is not a node of the sampling grid")]
    OffGrid { point: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid frequency band: {0}")]
    InvalidBand(String),

    #[error("{path}: line {line}: {reason}")]
    Parse {
        path: PathBuf,
        line: u64,
        reason: String,
    },

    #[error("{path}: non-uniform grid at row {row} (spacing {spacing}, expected {expected})")]
    NonUniformGrid {
        path: PathBuf,
        row: usize,
        spacing: f64,
        expected: f64,
    },

    #[error("{path}: no data rows")]
    EmptyFile { path: PathBuf },

    #[error("config: {0}")]
    ConfigFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(arg: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            arg,
            reason: reason.into(),
        }
    }

    /// Stable numeric code, used by the CLI to distinguish ingestion failures.
    pub fn code(&self) -> u8 {
        match self {
            Error::InvalidInput { .. } => 10,
            Error::InvalidConfig(_) => 11,
            Error::InvalidGrid(_) => 12,
            Error::GridMismatch(_) => 13,
            Error::OutsideDomain { .. } => 14,
            Error::OffGrid { .. } => 15,
            Error::DimensionMismatch { .. } => 16,
            Error::InvalidBand(_) => 17,
            Error::Parse { .. } => 20,
            Error::NonUniformGrid { .. } => 21,
            Error::EmptyFile { .. } => 22,
            Error::ConfigFile(_) => 23,
            Error::Io(_) => 30,
        }
    }
}
