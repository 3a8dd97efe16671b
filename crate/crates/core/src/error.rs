use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("algebra mismatch: expected dimension {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("element is not invertible (det of left multiplication = {det})")]
    NotInvertible { det: String },
    #[error("degenerate kernel basis (flattened Wronski determinant = {det})")]
    Degenerate { det: String },
    #[error("kernel rejected, {reason}: {detail}")]
    Rejected { reason: String, detail: String },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("pairing context too small: {0}")]
    Context(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        msg: msg.into(),
    }
}
