use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("individual {0} has no objective values")]
    Unevaluated(usize),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("gene {index} = {value} lies outside [{lower}, {upper}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
    #[error("population is empty")]
    EmptyPopulation,
    #[error("{0} must not be empty")]
    EmptyInput(&'static str),
    #[error("rank {rank} outside 1..={count}")]
    RankOutOfRange { rank: usize, count: usize },
    #[error("offspring carries no parent references")]
    MissingParents,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("percentage difference against a zero baseline")]
    ZeroBaseline,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
