//! Kernel configuration and the value-plus-error carrier type.

use crate::error::{EvalError, QsfResult};

/// A computed real value with an absolute-error estimate.
///
/// Invariants: `abs_err_est` is finite and non-negative whenever `value` is
/// finite, and a NaN value is never constructed silently (builders return an
/// error instead).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_est: f64,
}

impl EvalResult {
    /// Wraps a value and error estimate, refusing NaN/inf values.
    pub fn new(value: f64, abs_err_est: f64) -> QsfResult<Self> {
        if !value.is_finite() {
            if value.is_nan() {
                return Err(EvalError::NonFinite("computation produced NaN".into()));
            }
            return Err(EvalError::Overflow(
                "value exceeds representable range".into(),
            ));
        }
        let abs_err_est = if abs_err_est.is_finite() {
            abs_err_est.abs()
        } else {
            f64::MAX
        };
        Ok(EvalResult { value, abs_err_est })
    }

    /// An exact value (error estimate one ulp).
    pub fn exact(value: f64) -> Self {
        EvalResult {
            value,
            abs_err_est: value.abs() * f64::EPSILON,
        }
    }
}

/// Tuning knobs for the series/quadrature kernels. All operations are pure
/// functions of their arguments plus one immutable `KernelConfig`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConfig {
    /// Relative truncation target for power series.
    pub series_tol: f64,
    /// Hard cap on series terms before reporting `NonConvergence`.
    pub max_terms: usize,
    /// Node count for integral-representation fallbacks.
    pub quad_nodes: usize,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig {
            series_tol: 1e-15,
            max_terms: 10_000,
            quad_nodes: 64,
        }
    }
}

impl KernelConfig {
    /// Validates the documented invariants: `0 < series_tol < 1e-6` and
    /// `max_terms >= 100`.
    pub fn validated(self) -> QsfResult<Self> {
        if !(self.series_tol > 0.0 && self.series_tol < 1e-6) {
            return Err(EvalError::InvalidConfig(
                "series_tol must satisfy 0 < series_tol < 1e-6".into(),
            ));
        }
        if self.max_terms < 100 {
            return Err(EvalError::InvalidConfig("max_terms must be >= 100".into()));
        }
        if self.quad_nodes == 0 {
            return Err(EvalError::InvalidConfig("quad_nodes must be positive".into()));
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_invariants() {
        assert!(KernelConfig::default().validated().is_ok());
        let bad = KernelConfig {
            series_tol: 1e-3,
            ..KernelConfig::default()
        };
        assert!(matches!(bad.validated(), Err(EvalError::InvalidConfig(_))));
        let bad = KernelConfig {
            max_terms: 10,
            ..KernelConfig::default()
        };
        assert!(bad.validated().is_err());
    }

    #[test]
    fn eval_result_rejects_nan() {
        assert!(EvalResult::new(f64::NAN, 0.0).is_err());
        assert!(EvalResult::new(f64::INFINITY, 0.0).is_err());
        let r = EvalResult::new(1.5, 1e-16).unwrap();
        assert_eq!(r.value, 1.5);
    }
}
