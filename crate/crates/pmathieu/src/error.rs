use thiserror::Error;

/// Library error type.
///
/// `Convergence` carries the best value reached so callers can still report
/// something useful (the CLI prints it alongside the failure).
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the valid range of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iteration hit its budget before reaching the requested tolerance.
    #[error("convergence failure in {what}: best {best:.6e} +/- {err_estimate:.3e}")]
    Convergence {
        what: String,
        best: f64,
        err_estimate: f64,
    },

    /// A value that is real by symmetry came back with a significant
    /// imaginary part, or a cross-check inside one evaluation disagreed.
    #[error("internal consistency: {0}")]
    InternalConsistency(String),

    /// Overflow or loss of finiteness in a kernel evaluation.
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn convergence(what: impl Into<String>, best: f64, err_estimate: f64) -> Self {
        Error::Convergence {
            what: what.into(),
            best,
            err_estimate,
        }
    }
}
