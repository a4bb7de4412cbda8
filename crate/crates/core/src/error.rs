use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("signal must have at least one sample")]
    EmptySignal,

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("undefined Fourier ratio: signal is identically zero")]
    ZeroSignal,

    #[error("invalid threshold eta = {0}: must be finite and > 0")]
    InvalidEta(f64),

    #[error("modulus mismatch: span built over N = {span} but spectrum is over N = {spectrum}")]
    ModulusMismatch { span: usize, spectrum: usize },

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("oracle budget exceeded: {required} subsets needed, budget is {budget}")]
    OracleBudgetExceeded { required: u128, budget: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}: {message}")]
    Ingest { path: PathBuf, message: String },

    #[error("{path}: line {line}: {message}")]
    IngestRow {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("eta = {eta}: {source}")]
    AtEta {
        eta: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable category used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptySignal | Error::NonFinite { .. } => "signal",
            Error::ZeroSignal => "zero_signal",
            Error::InvalidEta(_) => "invalid_eta",
            Error::ModulusMismatch { .. } | Error::ZeroModulus => "modulus",
            Error::OracleBudgetExceeded { .. } => "oracle_budget_exceeded",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Ingest { .. } | Error::IngestRow { .. } => "ingest",
            Error::AtEta { source, .. } => source.kind(),
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
