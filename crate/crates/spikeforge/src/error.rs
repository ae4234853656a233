//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpikeError {
    #[error("dimension mismatch at {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        got: usize,
    },

    #[error("shape/data length mismatch: shape {shape:?} needs {expected} values, got {got}")]
    ShapeDataMismatch {
        shape: Vec<usize>,
        expected: usize,
        got: usize,
    },

    #[error("non-finite value produced by layer '{layer}'")]
    NonFinite { layer: String },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("sequence length mismatch: expected {expected} steps, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("network validation failed: {0}")]
    InvalidNetwork(String),

    #[error("layer '{layer}' is not linear (max deviation {max_dev:.3e})")]
    NonlinearLayer { layer: String, max_dev: f64 },

    #[error("no threshold available for slot '{slot}' ({sign} branch)")]
    MissingThreshold { slot: String, sign: &'static str },

    #[error("calibration profile does not cover slots: {0:?}")]
    UncoveredSlots(Vec<String>),

    #[error("empty sample set")]
    EmptyData,

    #[error("energy ratio undefined: ANN MAC count is zero")]
    UndefinedRatio,

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, SpikeError>;

impl SpikeError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        SpikeError::Io {
            path: path.into(),
            source,
        }
    }
}
