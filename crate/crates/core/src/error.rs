use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arithmetic outside the domain of an operation (inverting zero, gcd(0, 0)).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    /// An entry or element whose implied power of `t` would be negative or inconsistent.
    #[error("non-homogeneous: {0}")]
    NonHomogeneous(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),

    #[error("incompatible morphism: {0}")]
    IncompatibleMorphism(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("boundary does not square to zero: {0}")]
    BoundarySquare(String),

    /// A boundary failed to reduce to zero against the cycle basis.
    #[error("broken reduction: {0}")]
    BrokenReduction(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("stream error: {0}")]
    Stream(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// `true` for errors raised while reading text input.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }

    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            Error::Parse { message, .. } => Error::Parse { line, message },
            other => other,
        }
    }
}
