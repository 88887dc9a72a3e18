use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("result weight {weight} exceeds the weight cutoff {cutoff}")]
    TruncationExceeded { weight: i64, cutoff: i64 },

    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("slot ({k},{l}) lies outside a matrix of size {size}")]
    SlotOutOfRange { k: usize, l: usize, size: usize },

    #[error("omega filtration is not stable at v-weight cutoff {cutoff}: {detail}")]
    UnstableFiltration { cutoff: u32, detail: String },

    #[error("weight {weight} lies outside the retained module window")]
    OutOfWindow { weight: String },

    #[error("{0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
