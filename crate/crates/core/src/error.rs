//! Error type shared across the crate.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed file {path}: {detail}")]
    MalformedFile { path: PathBuf, detail: String },

    #[error("{path} row {row}: {detail}")]
    MalformedRow {
        path: PathBuf,
        row: usize,
        detail: String,
    },

    #[error("answer letter '{letter}' outside A..D in {context}")]
    BadAnswerLetter { letter: String, context: String },

    #[error("answer file {path} has {answers} lines but story file has {stories} stories")]
    AnswerCountMismatch {
        path: PathBuf,
        answers: usize,
        stories: usize,
    },

    #[error("duplicate example id '{0}'")]
    DuplicateId(String),

    #[error("example '{0}': {1}")]
    InvalidExample(String, String),

    #[error("no EQA prediction for example '{0}'")]
    MissingEqaPrediction(String),

    #[error("EQA prediction id '{found}' does not match example '{expected}'")]
    MismatchedEqaPrediction { expected: String, found: String },

    #[error("no supervision signal: candidate set for '{0}' is empty")]
    EmptyCandidates(String),

    #[error("degenerate scorer: zero probability mass on candidates of '{0}'")]
    ZeroCandidateMass(String),

    #[error("candidate set '{id}' references choice {choice} but only {n} choices exist")]
    InvalidChoiceIndex { id: String, choice: usize, n: usize },

    #[error("no gold label for example '{0}'")]
    MissingGold(String),

    #[error("candidate set lists differ on {0} example id(s)")]
    IdSetMismatch(usize),

    #[error("empty prediction map")]
    EmptyPredictions,

    #[error("prediction id '{0}' is unknown")]
    UnknownPredictionId(String),

    #[error("no trainable examples (all candidate sets empty or missing)")]
    NoTrainableExamples,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("model file {path}: feature set version {found} (expected {expected})")]
    ModelVersionMismatch {
        path: PathBuf,
        found: u32,
        expected: u32,
    },

    #[error("json error on {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(path: impl Into<PathBuf>, source: serde_json::Error) -> Self {
        Error::Json {
            path: path.into(),
            source,
        }
    }
}
