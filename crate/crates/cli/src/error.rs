use std::path::PathBuf;

use frobsat::linkage::ChainFailure;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: {source}")]
    Invalid {
        line: usize,
        column: usize,
        #[source]
        source: frobsat::Error,
    },
    #[error("unknown ideal {0:?}")]
    UnknownIdeal(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("command {command} requires `assert {assertion}` in the session")]
    MissingAssertion {
        command: &'static str,
        assertion: &'static str,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] frobsat::Error),
    #[error(transparent)]
    Chain(#[from] ChainFailure),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, CliError>;
