use thiserror::Error;

use crate::corner::EntropyResult;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what}: size {actual} exceeds the configured cap {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("graph has an isolated vertex ({0})")]
    IsolatedVertex(usize),

    #[error("graph is not {0}-regular")]
    NotRegular(usize),

    #[error("graph is not perfect")]
    NotPerfect,

    #[error("bipartite parts are unbalanced ({0} vs {1})")]
    Unbalanced(usize, usize),

    #[error("graph has no edges")]
    Edgeless,

    #[error("no convergence after {iterations} iterations (gap {gap:.3e} bits)")]
    NonConvergence {
        iterations: usize,
        gap: f64,
        best: Box<EntropyResult>,
    },

    #[error("maximum entropy certificate failed: value {value} vs log chi_f {target}")]
    CertificateMismatch { value: f64, target: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
