use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature exhausted its evaluation budget. Carries the best
    /// estimate reached so the caller can still inspect it.
    #[error("quadrature did not converge: best estimate {value} ± {error_estimate} after {evaluations} evaluations")]
    Convergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    /// The mode integrator produced a non-finite state.
    #[error("integration failure: non-finite state at step {step}")]
    Integration { step: usize },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
