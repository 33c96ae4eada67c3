use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AjsError {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),
    #[error("generator index {0} is not a simple affine reflection")]
    NotSimpleAffine(usize),
    #[error("weight lies on a reflecting hyperplane")]
    Singular,
    #[error("window too small: {0}")]
    Window(String),
    #[error("degree cap exhausted: {0}")]
    DegreeCap(String),
    #[error("set is not open: {0}")]
    NotOpen(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, AjsError>;
