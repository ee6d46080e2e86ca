use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("model cannot be mapped to free fermions ({0}); use the exact diagonalization in `model`")]
    NotFermionizable(String),

    #[error("model breaks the symmetry needed for sector reduction: {0}")]
    SymmetryViolation(String),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("malformed correlation matrix: {0}")]
    MalformedCorrelation(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("fit window is empty or degenerate for {n_sites} sites")]
    EmptyWindow { n_sites: usize },

    #[error("not computable: {0}")]
    NotComputable(String),

    #[error("interaction sum not converged at cutoff {cutoff} (change {change:.3e})")]
    CutoffTooSmall { cutoff: usize, change: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
