use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A row of tabular input could not be decoded.
    #[error("row {row}, column `{column}`: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    /// A value was decoded but breaks a domain invariant.
    #[error("invalid `{subject}`: {message}")]
    Validation { subject: String, message: String },

    /// Structural problem in a JSON document (missing blocks, bad labels, ...).
    #[error("schema error: {0}")]
    Schema(String),

    #[error("record `{exemplar}` is missing `{field}`")]
    IncompleteRecord { exemplar: String, field: String },

    #[error("unknown {kind} `{name}`")]
    Lookup { kind: &'static str, name: String },

    #[error("insufficient data: need at least {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("fits were computed on different datasets (`{left}` vs `{right}`)")]
    MismatchedDatasets { left: String, right: String },

    #[error("operator is not Hermitian: max |A - A†| = {deviation:.3e} exceeds {tolerance:.1e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("{index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(subject: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            subject: subject.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by the content of the input rather than by the
    /// environment. The CLI maps these to exit status 1 and I/O to 2.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}
