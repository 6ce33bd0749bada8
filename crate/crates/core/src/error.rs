use std::fmt;
use std::path::PathBuf;

use crate::sample::Class;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One problem found while validating a sample set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    /// An entire class is absent, so rates for it are undefined.
    EmptyClass(Class),
    NonFiniteScore {
        sample_id: String,
    },
    DuplicateId {
        sample_id: String,
    },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::EmptyClass(class) => write!(f, "no {class} samples present"),
            Issue::NonFiniteScore { sample_id } => {
                write!(f, "sample {sample_id:?} has a non-finite anomaly score")
            }
            Issue::DuplicateId { sample_id } => write!(f, "sample id {sample_id:?} appears more than once"),
        }
    }
}

/// All per-record diagnostics for a rejected sample set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError {
    pub issues: Vec<Issue>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid sample set ({} issue", self.issues.len())?;
        if self.issues.len() != 1 {
            f.write_str("s")?;
        }
        f.write_str(")")?;
        for issue in &self.issues {
            write!(f, "\n  - {issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Samples(#[from] ValidationError),

    #[error("inlier {sample_id:?} has no prediction_correct flag; risk-coverage needs one for every inlier")]
    MissingCorrectness { sample_id: String },

    #[error("malformed {kind} curve: {reason}")]
    MalformedCurve { kind: &'static str, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a probability vector: {0}")]
    NotAProbability(String),

    #[error("need at least {needed} training rows, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("k = {k} exceeds the {rows} available training rows")]
    KTooLarge { k: usize, rows: usize },

    #[error("dimension mismatch: expected {expected} features, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length mismatch: {what} has {got} entries, expected {expected}")]
    LengthMismatch { what: &'static str, expected: usize, got: usize },

    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: u64, message: String },

    #[error("{}:{line}: non-finite anomaly score for sample {sample_id:?}", path.display())]
    NonFiniteScore { path: PathBuf, line: u64, sample_id: String },

    #[error("{}:{line}: duplicate sample id {sample_id:?}", path.display())]
    DuplicateId { path: PathBuf, line: u64, sample_id: String },

    #[error("{}: schema error at `{at}`: {message}", path.display())]
    Schema { path: PathBuf, at: String, message: String },

    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
}

impl Error {
    /// True for failures caused by the caller's inputs rather than by the
    /// environment the tool runs in.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Write { .. })
    }

    pub(crate) fn read(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Read { path: path.into(), source }
    }

    pub(crate) fn write(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Write { path: path.into(), source }
    }
}
