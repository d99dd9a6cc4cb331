use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported group type: {0}")]
    UnsupportedType(String),
    #[error("root index {index} out of range (n_pos = {n_pos})")]
    IndexOutOfRange { index: usize, n_pos: usize },
    #[error("Weyl group of {group} exceeds the size cap of {cap} elements")]
    GroupTooLarge { group: String, cap: usize },
    #[error("elements belong to different root systems ({0} vs {1})")]
    MixedRootSystems(String, String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NonDominantInput(String),
    #[error("oracle budget exceeded: {0}")]
    OracleOverflow(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("tuple size {s} outside the supported range 2..={max}")]
    TupleSize { s: usize, max: usize },
    #[error("more than {cap} witnesses; narrow the search")]
    TooManyWitnesses { cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal arithmetic error: {0}")]
    Arithmetic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
