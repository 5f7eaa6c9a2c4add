use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine produced an unusable result.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// An expectation does not exist (e.g. an MGF past its abscissa of convergence).
    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("empty data set")]
    EmptyData,

    #[error("line {line}: cannot parse {token:?} as a number")]
    Parse { line: usize, token: String },

    #[error("line {line}: observation {value} is not positive")]
    NonPositive { line: usize, value: f64 },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Reference data failed its validation against published summaries.
    #[error("dataset validation failed: {0}")]
    Validation(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
