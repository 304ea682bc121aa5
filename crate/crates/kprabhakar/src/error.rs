//! Error type shared by every operator in the crate.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the special-function, operator, and eigenvalue layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument or parameter was violated.
    /// The message names the violated precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The final exponentiation of a k-Gamma value exceeds the f64 range.
    /// The log-space value is still available here.
    #[error("k-gamma overflow: ln Gamma_k = {ln_value} exceeds the f64 exponent range")]
    Overflow { ln_value: f64 },

    /// Series summation hit the term cap before the tail estimate fell
    /// below the requested tolerance. Carries the partial sum and the
    /// number of terms consumed.
    #[error("series did not converge within {terms_used} terms (partial sum {partial})")]
    SeriesDivergence { partial: f64, terms_used: usize },

    /// A term of a shifted Mittag-Leffler series required Gamma_k at one
    /// of its poles. Carries the term index and the offending argument.
    #[error("Gamma_k pole at series term {index} (argument {argument})")]
    GammaPole { index: usize, argument: f64 },

    /// The Laplace convergence condition |omega*k*(k*s)^(-rho/k)| < 1 failed.
    #[error("Laplace convergence margin {margin} is not below 1")]
    LaplaceMargin { margin: f64 },

    /// Power iteration failed to reach the residual target.
    #[error("power iteration did not converge after {iterations} iterations (residual {residual})")]
    EigenNoConvergence { iterations: usize, residual: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
