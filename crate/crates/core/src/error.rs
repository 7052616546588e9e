use thiserror::Error;

/// Library-wide error type.
///
/// Variants split into two families: input errors (bad grammar, parameters
/// out of range) and numerical errors (divergent sums, solver failures).
/// The CLI maps the former to exit code 2 and the latter to exit code 3.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("alphabet syntax error: {0}")]
    Syntax(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("divergent sum: s = {s} is not above the convergence abscissa {abscissa}")]
    Divergent { s: f64, abscissa: f64 },

    #[error("grid mismatch: {0} vs {1} nodes")]
    GridMismatch(usize, usize),

    #[error("grid too small: need at least {min} nodes, got {got}")]
    GridTooSmall { min: usize, got: usize },

    #[error("singular-point misuse: {0}")]
    SingularPoint(String),

    #[error("solver failed to converge: {0}")]
    NonConvergence(String),

    #[error("dominant eigenvalue is not real, positive and simple")]
    ComplexDominant,

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for errors caused by malformed input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax(_) | Error::InvalidAlphabet(_) | Error::InvalidParameter(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
