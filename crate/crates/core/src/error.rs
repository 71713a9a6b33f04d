use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("augmentation infeasible: {0}")]
    Infeasible(#[from] crate::augment::Infeasible),

    #[error("sampling capacity exceeded: asked for {requested} of {available} items")]
    Capacity { requested: usize, available: usize },

    #[error("training failed: {0}")]
    Training(String),

    #[error("class {class} has no examples, its confusion-matrix row is undefined")]
    UndefinedRow { class: usize },

    #[error("cannot split: {0}")]
    Split(String),

    #[error("RIMP is undefined for an original accuracy of zero")]
    UndefinedRimp,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: schema error: {message}")]
    Schema {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("model file {path}: {message}")]
    Model { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
