use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no elements")]
    NoElements,

    #[error("invalid excitation at element {index}: {value}")]
    InvalidExcitation { index: usize, value: f64 },

    #[error("invalid array: {0}")]
    InvalidArray(String),

    #[error("invalid angle grid: {0}")]
    InvalidGrid(String),

    #[error("degenerate pattern: every sample is zero")]
    DegeneratePattern,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no elements survive threshold")]
    NoSurvivors,

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("instance too large for exact RIP: {subsets} subsets exceeds budget {budget}")]
    InstanceTooLarge { subsets: u128, budget: u128 },

    #[error("bound undefined: n = {n} must exceed m = {m}")]
    BoundUndefined { m: usize, n: usize },

    #[error("column {0} is identically zero")]
    ZeroColumn(usize),

    #[error("no sidelobe structure")]
    NoSidelobes,

    #[error("grid mismatch between compared patterns")]
    GridMismatch,

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Wraps `self` with the name of the pipeline stage that produced it.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, looking through stage labels.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}
