//! Whittaker functions with second index 0, through the Kummer reduction
//! M_{k,0}(z) = e^{-z/2} z^{1/2} M(1/2-k, 1, z) and
//! W_{k,0}(z) = e^{-z/2} z^{1/2} U(1/2-k, 1, z).

use crate::config::{EvalResult, KernelConfig};
use crate::error::{EvalError, QsfResult};
use crate::sfkernel::derivs::ode2_chain;
use crate::sfkernel::kummer::{kummer_m, kummer_m_deriv, kummer_u_with_deriv};

/// Regular (M) or irregular (W) Whittaker solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhittakerKind {
    M,
    W,
}

impl std::fmt::Display for WhittakerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", if *self == WhittakerKind::M { "M" } else { "W" })
    }
}

fn kummer_pair(
    kind: WhittakerKind,
    kappa: f64,
    z: f64,
    cfg: &KernelConfig,
) -> QsfResult<(f64, f64, f64, f64)> {
    let a = 0.5 - kappa;
    match kind {
        WhittakerKind::M => {
            let f = kummer_m(a, 1.0, z, cfg)?;
            let d = kummer_m_deriv(a, 1.0, z, cfg)?;
            Ok((f.value, f.abs_err_est, d.value, d.abs_err_est))
        }
        WhittakerKind::W => {
            let (f, d) = kummer_u_with_deriv(a, 1.0, z, cfg)?;
            Ok((f.value, f.abs_err_est, d.value, d.abs_err_est))
        }
    }
}

/// M_{kappa,0}(z) or W_{kappa,0}(z) for z > 0.
pub fn whittaker(kind: WhittakerKind, kappa: f64, z: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if z <= 0.0 {
        return Err(EvalError::Domain(format!(
            "Whittaker {kind} requires z > 0 (got {z})"
        )));
    }
    let (f, fe, _, _) = kummer_pair(kind, kappa, z, cfg)?;
    let pref = (-z / 2.0).exp() * z.sqrt();
    if !(pref * f).is_finite() {
        return Err(EvalError::Overflow(format!(
            "Whittaker {kind}(kappa={kappa}) overflows at z = {z}"
        )));
    }
    EvalResult::new(pref * f, pref * fe + (pref * f).abs() * 2e-16)
}

/// d/dz of the Whittaker function, through the prefactor product rule:
/// d/dz [e^{-z/2} z^{1/2} F] = e^{-z/2} z^{1/2} [F' + (1/(2z) - 1/2) F].
pub fn whittaker_dx(
    kind: WhittakerKind,
    kappa: f64,
    z: f64,
    cfg: &KernelConfig,
) -> QsfResult<EvalResult> {
    if z <= 0.0 {
        return Err(EvalError::Domain(format!(
            "Whittaker {kind} requires z > 0 (got {z})"
        )));
    }
    let (f, fe, d, de) = kummer_pair(kind, kappa, z, cfg)?;
    let pref = (-z / 2.0).exp() * z.sqrt();
    let v = pref * (d + (0.5 / z - 0.5) * f);
    if !v.is_finite() {
        return Err(EvalError::Overflow(format!(
            "Whittaker {kind}' overflows at z = {z}"
        )));
    }
    EvalResult::new(v, pref * (de + fe) + v.abs() * 4e-16)
}

/// Derivatives [w, w', ..., w^(order)] of the Whittaker function, extended
/// past order 1 by its own ODE  w'' = (1/4 - kappa/z - 1/(4 z^2)) w.
pub(crate) fn whittaker_derivs(
    kind: WhittakerKind,
    kappa: f64,
    z: f64,
    order: usize,
    cfg: &KernelConfig,
) -> QsfResult<Vec<f64>> {
    let w0 = whittaker(kind, kappa, z, cfg)?.value;
    if order == 0 {
        return Ok(vec![w0]);
    }
    let w1 = whittaker_dx(kind, kappa, z, cfg)?.value;
    // q^{(j)} derivatives of 1/4 - kappa z^-1 - (1/4) z^-2
    let q = |j: usize| -> f64 {
        if j == 0 {
            return 0.25 - kappa / z - 0.25 / (z * z);
        }
        let mut fact = 1.0f64;
        for i in 1..=j {
            fact *= i as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sign * (-kappa * fact / z.powi(j as i32 + 1)
            - 0.25 * fact * (j as f64 + 1.0) / z.powi(j as i32 + 2))
    };
    Ok(ode2_chain(w0, w1, &|_| 0.0, &q, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> KernelConfig {
        KernelConfig::default()
    }

    // pinned by the arbitrary-precision oracle
    const WHIT_M_0_2: f64 = 1.7904875351746872e+00;
    const WHIT_W_0_1: f64 = 5.2154761081954049e-01;

    #[test]
    fn kappa_half_collapses() {
        // M_{1/2,0}(1) = e^{-1/2} since M(0,1,z) = 1
        assert_relative_eq!(
            whittaker(WhittakerKind::M, 0.5, 1.0, &cfg()).unwrap().value,
            (-0.5f64).exp(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn pinned_values() {
        assert_relative_eq!(
            whittaker(WhittakerKind::M, 0.0, 2.0, &cfg()).unwrap().value,
            WHIT_M_0_2,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            whittaker(WhittakerKind::W, 0.0, 1.0, &cfg()).unwrap().value,
            WHIT_W_0_1,
            max_relative = 1e-11
        );
    }

    #[test]
    fn domain_errors() {
        assert!(whittaker(WhittakerKind::M, 0.3, 0.0, &cfg()).is_err());
        assert!(whittaker(WhittakerKind::W, 0.3, -1.0, &cfg()).is_err());
    }

    #[test]
    fn ode_satisfied_by_derivs_chain() {
        // w'' from the chain equals (1/4 - k/z - 1/(4z^2)) w
        for kind in [WhittakerKind::M, WhittakerKind::W] {
            let (kappa, z) = (-1.3, 2.1);
            let d = whittaker_derivs(kind, kappa, z, 2, &cfg()).unwrap();
            let rhs = (0.25 - kappa / z - 0.25 / (z * z)) * d[0];
            assert_relative_eq!(d[2], rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn third_derivative_matches_finite_difference() {
        let (kappa, z) = (0.8, 3.0);
        let d = whittaker_derivs(WhittakerKind::M, kappa, z, 3, &cfg()).unwrap();
        let h = 1e-4;
        let w2 = |t: f64| whittaker_derivs(WhittakerKind::M, kappa, t, 2, &cfg()).unwrap()[2];
        let fd = (w2(z + h) - w2(z - h)) / (2.0 * h);
        assert_relative_eq!(d[3], fd, max_relative = 1e-6);
    }
}
