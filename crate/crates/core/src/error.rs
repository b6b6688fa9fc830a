//! Error types shared by every evaluation routine in the crate.

use std::fmt;

/// Errors from special-function and solution-family evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    /// Input outside the routine's domain. The message names the violated
    /// constraint (e.g. "M > 0 required").
    Domain(String),
    /// Evaluation at a pole of the function (e.g. Gamma at a non-positive
    /// integer) where no finite limit exists.
    Pole(String),
    /// The result exceeds the representable floating-point range.
    Overflow(String),
    /// A series or iteration hit its term limit before meeting the
    /// truncation target.
    NonConvergence(String),
    /// The requested value is genuinely infinite (e.g. 2F1 at z -> 1 with
    /// c - a - b <= 0 and a non-terminating series).
    Divergence(String),
    /// A quadrature rule sampled a non-finite integrand value.
    Quadrature(String),
    /// The xi radicand of the quartic root formulas is negative, so xi is
    /// not real (complex spectral data is out of scope).
    ComplexXi(String),
    /// A solution was requested for a quartic root with non-zero imaginary
    /// part; those solutions are not real-valued.
    NonRealRoot(String),
    /// Configuration outside its documented invariants.
    InvalidConfig(String),
    /// An internal computation produced NaN; never returned silently as a value.
    NonFinite(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Domain(m) => write!(f, "domain error: {m}"),
            EvalError::Pole(m) => write!(f, "pole error: {m}"),
            EvalError::Overflow(m) => write!(f, "overflow: {m}"),
            EvalError::NonConvergence(m) => write!(f, "series did not converge: {m}"),
            EvalError::Divergence(m) => write!(f, "divergent value: {m}"),
            EvalError::Quadrature(m) => write!(f, "quadrature error: {m}"),
            EvalError::ComplexXi(m) => write!(f, "complex xi: {m}"),
            EvalError::NonRealRoot(m) => write!(f, "non-real root: {m}"),
            EvalError::InvalidConfig(m) => write!(f, "invalid config: {m}"),
            EvalError::NonFinite(m) => write!(f, "non-finite result: {m}"),
        }
    }
}

impl std::error::Error for EvalError {}

/// Result alias used throughout the crate.
pub type QsfResult<T> = Result<T, EvalError>;
