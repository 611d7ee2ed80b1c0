use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system type {family}{rank}: {reason}")]
    InvalidRootSystem {
        family: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("not a root of {0}")]
    NotARoot(String),
    #[error("subset J is not invariant under the automorphism group")]
    NotGammaInvariant,
    #[error("not a valid group of diagram automorphisms: {0}")]
    InvalidAutomorphismGroup(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("group of order at least {estimate} exceeds element cap {cap}")]
    SizeCap { estimate: u64, cap: usize },
    #[error("element is not in the expected subgroup: {0}")]
    NotInSubgroup(String),
    #[error("matrix does not belong to the model group")]
    NotInGroup,
}

pub type Result<T> = std::result::Result<T, Error>;
