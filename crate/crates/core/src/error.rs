use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("`!` is not allowed here; use the KG2 variant of this operation")]
    DmNegNotAllowed,
    #[error("operation requires a crisp frame")]
    FuzzyFrame,
    #[error("formula `{0}` is outside the accepted fragment: {1}")]
    Fragment(String, &'static str),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("model file: {path} (line {line}): {message}")]
    ModelFile { path: String, line: usize, message: String },
    #[error(transparent)]
    Transform(#[from] crate::formula::TransformError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
