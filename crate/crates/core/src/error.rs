use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// The value would put θ or ξ into a denominator.
    #[error("not invertible in Q(s)[theta, xi]: {0}")]
    NotInvertible(String),

    #[error("limit does not exist: pole at s = 1")]
    LimitDoesNotExist,

    #[error("limit_at_one requires a theta-free scalar")]
    ThetaInLimit,

    #[error("denominator vanishes identically after substitution")]
    VanishingDenominator,

    #[error("singular matrix")]
    Singular,

    #[error("matrix is not nilpotent (N^{0} != 0)")]
    NotNilpotent(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported spin {0}")]
    UnsupportedSpin(String),

    #[error("coproduct {coproduct} does not provide generator {generator}")]
    UnsupportedGenerator {
        coproduct: String,
        generator: String,
    },

    #[error("unsupported representation: {0}")]
    UnsupportedRepresentation(String),

    #[error("inconsistent representation: {0}")]
    InconsistentRepresentation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
