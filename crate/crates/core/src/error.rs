use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// `union` was called on two vertices that are not distinct roots.
    #[error("union contract violated: {0}")]
    UnionContract(String),

    /// The peeling decoder was handed a component with odd syndrome parity.
    #[error("odd syndrome parity in erased component rooted at vertex {root}")]
    OddComponent { root: usize },

    /// The residual passed to the homology test is not a cycle.
    #[error("residual has a nonempty syndrome ({0} defects)")]
    ResidualNotCycle(usize),

    #[error("curves never cross on the common grid")]
    NoCrossing,

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}
