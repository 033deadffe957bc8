use thiserror::Error;

/// Errors produced by field construction, group loading, constructions and analysis.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("field of order {order} exceeds the ceiling {ceiling}")]
    FieldTooLarge { order: u128, ceiling: u64 },
    #[error("no element of order {p} in GF({q})")]
    NoSuchRoot { q: u64, p: u64 },
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("group {0} is cyclic")]
    CyclicGroup(String),
    #[error("subgroup of order {sub} is not maximal in a group of order {order}")]
    NotMaximal { sub: usize, order: usize },
    #[error("q = {0} equals the prime of the acting p-group")]
    SamePrime(u64),
    #[error("q = {0} is not prime")]
    NotPrime(u64),
    #[error("operation requires {expected} provenance")]
    WrongProvenance { expected: &'static str },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("{what} has size {size}, above the enumeration ceiling {ceiling}")]
    TooLargeToEnumerate { what: &'static str, size: String, ceiling: u64 },
    #[error("subgroups have different indices {0} and {1}")]
    IndexMismatch(String, String),
    #[error("bipartite coset graph has no perfect matching: {0}")]
    MatchingFailed(String),
    #[error("exact search exceeded its budget of {0} nodes")]
    ExactBudgetExceeded(u64),
    #[error("internal error: {0}")]
    InternalError(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPrime(_) => "InvalidPrime",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::NoSuchRoot { .. } => "NoSuchRoot",
            Error::ShapeError(_) => "ShapeError",
            Error::UnknownGroup(_) => "UnknownGroup",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::CyclicGroup(_) => "CyclicGroup",
            Error::NotMaximal { .. } => "NotMaximal",
            Error::SamePrime(_) => "SamePrime",
            Error::NotPrime(_) => "NotPrime",
            Error::WrongProvenance { .. } => "WrongProvenance",
            Error::InvalidAction(_) => "InvalidAction",
            Error::TooLargeToEnumerate { .. } => "TooLargeToEnumerate",
            Error::IndexMismatch(..) => "IndexMismatch",
            Error::MatchingFailed(_) => "MatchingFailed",
            Error::ExactBudgetExceeded(_) => "ExactBudgetExceeded",
            Error::InternalError(_) => "InternalError",
            Error::Io(_) => "Io",
            Error::Parse(_) => "Parse",
        }
    }

    /// True for errors caused by a resource ceiling or search budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::TooLargeToEnumerate { .. } | Error::ExactBudgetExceeded(_) | Error::FieldTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
