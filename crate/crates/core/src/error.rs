use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot represent {0} in this coefficient ring")]
    NotRepresentable(String),

    #[error("precision too low: weight {weight} needs at least {required} digits, got {given}")]
    PrecisionTooLow { weight: usize, required: u32, given: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::AlphabetMismatch { .. } => "alphabet-mismatch",
            Error::UnknownGenerator(_) => "unknown-generator",
            Error::Precondition(_) => "precondition",
            Error::NotRepresentable(_) => "not-representable",
            Error::PrecisionTooLow { .. } => "precision-too-low",
            Error::Parse(_) => "parse",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}
