use thiserror::Error;

/// Errors produced by the integrators, systems and diagnostics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    /// `Id - xi/2` (or `Id + xi/2`) could not be factorized. Usually the step is too large.
    #[error("singular Cayley factor; the step size is likely too large")]
    SingularFactor,

    #[error("stage solver did not converge after {iters} iterations (residual {residual:e})")]
    NonConvergence { iters: usize, residual: f64 },

    #[error("eigenvalue computation did not converge")]
    EigenFailure,

    #[error("matrix has nonzero trace {trace:e}; operator is only defined on traceless matrices")]
    NonzeroTrace { trace: f64 },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("unknown tableau `{0}` (expected one of: midpoint, sdirk2, yoshida4, suzuki4)")]
    UnknownTableau(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("run aborted at step {step}: {source}")]
    Aborted {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Strip any [`Error::Aborted`] wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Aborted { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn is_non_convergence(&self) -> bool {
        matches!(
            self.root(),
            Error::NonConvergence { .. } | Error::SingularFactor
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
