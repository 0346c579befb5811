//! Input documents, result tables and the `qgeom` command line front end
//! for [`qgeom_core`].
//!
//! Spectra from the core crate are in units of `4πγℓ_P²` (area) and
//! `(8πγℓ_P²)^{3/2}` (volume); tables produced here carry the Immirzi
//! parameter, the volume constant `c`, and `ℓ_P = 1`.

pub mod document;
pub mod job;
pub mod table;

pub use document::Document;
pub use job::{compute, run, Command, JobConfig, Settings};
pub use table::{Format, Row, Table};

use qgeom_core::{GraphError, OperatorError};

#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
    #[error("{0}")]
    Config(String),
    #[error("input has no {0}")]
    Missing(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("geometry: {0}")]
    Geometry(#[from] GraphError),
    #[error(transparent)]
    Operator(OperatorError),
}

impl From<OperatorError> for JobError {
    fn from(e: OperatorError) -> Self {
        match e {
            OperatorError::Graph(g) => JobError::Geometry(g),
            e => JobError::Operator(e),
        }
    }
}

impl JobError {
    /// 1 for unreadable or malformed input, 2 for geometric or numerical
    /// failures on well-formed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Parse { .. } | JobError::Config(_) | JobError::Missing(_) | JobError::Io { .. } => 1,
            JobError::Geometry(_) | JobError::Operator(_) => 2,
        }
    }
}
