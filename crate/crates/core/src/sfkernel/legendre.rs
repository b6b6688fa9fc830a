//! Ferrers Legendre functions P(nu, x) and Q(nu, x) of general real degree
//! on (-1, 1), order 0.
//!
//! P(nu,x) = 2F1(-nu, nu+1; 1; (1-x)/2). Q for non-integer nu comes from the
//! combination (pi/2)[P(nu,x) cos(nu pi) - P(nu,-x)]/sin(nu pi); integer nu
//! uses the closed forms Q0 = atanh x, Q1 = x atanh x - 1 and the forward
//! three-term recurrence (the combination degenerates 0/0 at integers; the
//! guard switches paths when |nu - round(nu)| < 1e-8).
//!
//! Derivatives use the upward relation (1-x^2) F' = (nu+1)(x F_nu - F_{nu+1})
//! which holds for both kinds and stays finite at nu = 0.

use crate::config::{EvalResult, KernelConfig};
use crate::error::{EvalError, QsfResult};
use crate::sfkernel::gamma::{cos_pi, sin_pi};
use crate::sfkernel::hyp2f1::gauss_2f1;

/// First (P) or second (Q) kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegendreKind {
    P,
    Q,
}

impl std::fmt::Display for LegendreKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", if *self == LegendreKind::P { "P" } else { "Q" })
    }
}

const INT_NU_TOL: f64 = 1e-8;

fn check_x(x: f64) -> QsfResult<()> {
    if !(-1.0 < x && x < 1.0) {
        return Err(EvalError::Domain(format!(
            "Legendre functions require -1 < x < 1 (got {x})"
        )));
    }
    Ok(())
}

fn p_value(nu: f64, x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    gauss_2f1(-nu, nu + 1.0, 1.0, (1.0 - x) / 2.0, cfg)
}

fn q_integer(n: i64, x: f64) -> QsfResult<EvalResult> {
    if n < 0 {
        return Err(EvalError::Domain(format!(
            "Q requires degree nu >= 0 at integers (got {n})"
        )));
    }
    let at = x.atanh();
    let mut q0 = at;
    if n == 0 {
        return EvalResult::new(q0, q0.abs() * 1e-15);
    }
    let mut q1 = x * at - 1.0;
    for k in 1..n {
        let kf = k as f64;
        let q2 = ((2.0 * kf + 1.0) * x * q1 - kf * q0) / (kf + 1.0);
        q0 = q1;
        q1 = q2;
    }
    // forward recurrence is mildly lossy; document ~n * eps growth
    EvalResult::new(q1, q1.abs() * 1e-14 * (n as f64).max(1.0))
}

fn q_value(nu: f64, x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if (nu - nu.round()).abs() < INT_NU_TOL {
        return q_integer(nu.round() as i64, x);
    }
    let p_pos = p_value(nu, x, cfg)?;
    let p_neg = p_value(nu, -x, cfg)?;
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    let v = std::f64::consts::FRAC_PI_2 * (p_pos.value * c - p_neg.value) / s;
    let eb = std::f64::consts::FRAC_PI_2 * (p_pos.abs_err_est + p_neg.abs_err_est) / s.abs()
        + v.abs() * 1e-15;
    EvalResult::new(v, eb)
}

/// P(nu, x) or Q(nu, x) on (-1, 1).
pub fn legendre(kind: LegendreKind, nu: f64, x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    check_x(x)?;
    match kind {
        LegendreKind::P => p_value(nu, x, cfg),
        LegendreKind::Q => q_value(nu, x, cfg),
    }
}

/// dF/dx by (1-x^2) F'_nu = (nu+1)(x F_nu - F_{nu+1}).
pub fn legendre_dx(kind: LegendreKind, nu: f64, x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    check_x(x)?;
    let f0 = legendre(kind, nu, x, cfg)?;
    let f1 = legendre(kind, nu + 1.0, x, cfg)?;
    let d = (nu + 1.0) * (x * f0.value - f1.value) / (1.0 - x * x);
    let eb = (nu + 1.0).abs() * (f0.abs_err_est + f1.abs_err_est) / (1.0 - x * x)
        + d.abs() * 1e-15;
    EvalResult::new(d, eb)
}

/// (F, F') in one call; the shape every solution-family module consumes.
pub(crate) fn legendre_value_and_deriv(
    kind: LegendreKind,
    nu: f64,
    x: f64,
    cfg: &KernelConfig,
) -> QsfResult<(f64, f64)> {
    let v = legendre(kind, nu, x, cfg)?;
    let d = legendre_dx(kind, nu, x, cfg)?;
    Ok((v.value, d.value))
}
