use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("dataset not found: {}", path.display())]
    DatasetNotFound { path: PathBuf },
    #[error("{}: bad magic 0x{found:08x}, expected 0x{expected:08x}", path.display())]
    BadMagic {
        path: PathBuf,
        found: u32,
        expected: u32,
    },
    #[error("{}: truncated {field}: need {needed} bytes, {available} available", path.display())]
    Truncated {
        path: PathBuf,
        field: &'static str,
        needed: usize,
        available: usize,
    },
    #[error("{}: unsupported format: {reason}", path.display())]
    UnsupportedFormat { path: PathBuf, reason: String },
    #[error("invalid config: {0}")]
    ConfigInvalid(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("packet: {0}")]
    Decode(#[from] topocode::codec::DecodeError),
    #[error("packet: {0}")]
    Encode(#[from] topocode::codec::EncodeError),
    #[error("image: {0}")]
    Image(#[from] topocode::ImageError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// Stable machine-readable kind, printed in the CLI's error line.
    pub fn kind(&self) -> &'static str {
        match self {
            HarnessError::DatasetNotFound { .. } => "dataset-not-found",
            HarnessError::BadMagic { .. } => "bad-magic",
            HarnessError::Truncated { .. } => "truncated",
            HarnessError::UnsupportedFormat { .. } => "unsupported-format",
            HarnessError::ConfigInvalid(_) => "config-invalid",
            HarnessError::Io { .. } => "io",
            HarnessError::Decode(_) => "decode",
            HarnessError::Encode(_) => "encode",
            HarnessError::Image(_) => "image",
            HarnessError::Csv(_) => "csv",
            HarnessError::Json(_) => "json",
        }
    }

    pub fn io(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> Self {
        let context = context.into();
        move |source| HarnessError::Io { context, source }
    }
}
