use crate::exact::ExactError;

/// Crate-wide error vocabulary.  Input mistakes (bad type strings, vectors of
/// the wrong dimension, tuples outside a required domain) are separated from
/// resource guards (group enumeration past the configured limit) because the
/// CLI maps them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("group order {order} exceeds enumeration limit {limit}")]
    GroupTooLarge { order: u128, limit: u128 },
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("vector lies outside the required chamber: {0}")]
    NotInChamber(String),
    #[error("tuple is not in the fundamental domain: {0}")]
    NotInFund(String),
    #[error("not a simple subsystem: {0}")]
    NotSimpleSystem(String),
    #[error("not a generalized Cartan matrix: {0}")]
    NotAGcm(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Result<T> = std::result::Result<T, Error>;
