use thiserror::Error;

/// Errors raised by the combinatorial operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u32),

    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<u32>, reason: String },

    #[error("invalid abacus: {0}")]
    InvalidAbacus(String),

    #[error("invalid core tuple: {0}")]
    InvalidTuple(String),

    #[error("{0} is not a p-bar core")]
    NotACore(String),

    #[error("index {index} out of range 0..={t}")]
    InvalidIndex { index: usize, t: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("block {0} is not a vertex of the graph")]
    UnknownBlock(String),

    #[error("inconsistent parities: {0}")]
    InconsistentParities(String),

    #[error("invalid range {lo}..={hi}")]
    InvalidRange { lo: i64, hi: i64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
