use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Domain errors raised by the toolkit.
///
/// [`Error::code`] gives the stable identifier used in CLI error objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sum mixes +inf and -inf")]
    IllPosed,
    #[error("sets or measures live on different spaces")]
    SpaceMismatch,
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("points {0} do not form a measurable set")]
    NotMeasurable(String),
    #[error("duplicate point {0:?}")]
    DuplicatePoint(String),
    #[error("{count} atoms exceeds the limit of {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error("{what}: expected {expected} entries, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("atom values contain both +inf and -inf")]
    MixedInfinities,
    #[error("measure is not positive on atom {0}")]
    NotPositive(String),
    #[error("domain must contain at least one set")]
    EmptyDomain,
    #[error("trace set {0} has no derivable value")]
    NotTraceClosed(String),
    #[error("value of {0} differs from the sum over its atoms")]
    AdditivityViolation(String),
    #[error("domain set {0} contains atoms valued +inf and -inf")]
    MixedInfinitiesInDomainSet(String),
    #[error("fill assigns a value to determined atom {0}")]
    FillConflict(String),
    #[error("set {0} is in the domain")]
    InDomain(String),
    #[error("symbolic set is not in the modeled algebra")]
    NotInAlgebra,
    #[error("set family is empty")]
    EmptyFamily,
    #[error("measure is not absolutely continuous: null atom {0} has nonzero value")]
    NotAbsContinuous(String),
    #[error("invalid probability: {0}")]
    InvalidProbability(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::IllPosed => "IllPosed",
            Error::SpaceMismatch => "SpaceMismatch",
            Error::UnknownPoint(_) => "UnknownPoint",
            Error::NotMeasurable(_) => "NotMeasurable",
            Error::DuplicatePoint(_) => "DuplicatePoint",
            Error::TooLarge { .. } => "TooLarge",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::MixedInfinities => "MixedInfinities",
            Error::NotPositive(_) => "NotPositive",
            Error::EmptyDomain => "EmptyDomain",
            Error::NotTraceClosed(_) => "NotTraceClosed",
            Error::AdditivityViolation(_) => "AdditivityViolation",
            Error::MixedInfinitiesInDomainSet(_) => "MixedInfinitiesInDomainSet",
            Error::FillConflict(_) => "FillConflict",
            Error::InDomain(_) => "InDomain",
            Error::NotInAlgebra => "NotInAlgebra",
            Error::EmptyFamily => "EmptyFamily",
            Error::NotAbsContinuous(_) => "NotAbsContinuous",
            Error::InvalidProbability(_) => "InvalidProbability",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
        }
    }
}
