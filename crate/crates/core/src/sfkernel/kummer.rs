//! Confluent hypergeometric functions: Kummer M(a,b,z) and the irregular
//! U(a,1,z) (second parameter fixed to 1, the logarithmic case — the only
//! one the Whittaker mu = 0 reduction needs).
//!
//! M: double-double series; the z < 0 case routes through the Kummer
//! transformation M(a,b,z) = e^z M(b-a, b, -z) to keep all series terms
//! positive-argument.
//!
//! U(a,1,z) routes by regime:
//!   - a a non-positive integer: exact Laguerre polynomial reduction,
//!   - z <= 8 and a <= 8: digamma-corrected double-double log series,
//!   - a > 1/4: the Laplace integral over a generalized Gauss-Laguerre rule
//!     (no cancellation at any z),
//!   - otherwise (a <= 1/4, z large): downward recurrence in a from two
//!     integral-path seeds; U is dominant in that direction so the
//!     recurrence is stable.

use crate::config::{EvalResult, KernelConfig};
use crate::dd::{Dd, DdSum};
use crate::error::{EvalError, QsfResult};
use crate::sfkernel::gamma::{digamma, gamma_raw, is_nonpos_int};
use crate::sfkernel::quad::{gauss_laguerre_rule, laguerre_poly};

/// Kummer M(a, b, z) by direct series.
pub fn kummer_m(a: f64, b: f64, z: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if is_nonpos_int(b) {
        return Err(EvalError::Pole(format!(
            "Kummer M pole: b = {b} is a non-positive integer"
        )));
    }
    if z < 0.0 && !is_nonpos_int(a) {
        // M(a,b,z) = e^z M(b-a, b, -z)
        let m = m_series(b - a, b, -z, cfg)?;
        let s = z.exp();
        return EvalResult::new(m.0.to_f64() * s, m.1 * s + (m.0.to_f64() * s).abs() * 1e-15);
    }
    let (v, eb) = m_series(a, b, z, cfg)?;
    EvalResult::new(v.to_f64(), eb + v.to_f64().abs() * 1e-16)
}

/// dM/dz = (a/b) M(a+1, b+1, z).
pub(crate) fn kummer_m_deriv(a: f64, b: f64, z: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    let m = kummer_m(a + 1.0, b + 1.0, z, cfg)?;
    let s = a / b;
    EvalResult::new(s * m.value, s.abs() * m.abs_err_est)
}

fn m_series(a: f64, b: f64, z: f64, cfg: &KernelConfig) -> QsfResult<(Dd, f64)> {
    let term_n = if is_nonpos_int(a) {
        Some((-a.round()) as usize)
    } else {
        None
    };
    let mut sum = DdSum::new();
    let mut term = Dd::ONE;
    let zdd = Dd::from_f64(z);
    let mut k = 0usize;
    loop {
        sum.add(term);
        if term_n == Some(k) {
            break;
        }
        let kf = k as f64;
        term = term.mul_f64(a + kf).mul(zdd).div_f64(b + kf).div_f64(kf + 1.0);
        k += 1;
        if term_n.is_none() && term.hi.abs() < 1e-33 * sum.acc.hi.abs().max(1e-300) {
            break;
        }
        if k > cfg.max_terms {
            return Err(EvalError::NonConvergence(format!(
                "Kummer M series exceeded {} terms (a={a}, b={b}, z={z})",
                cfg.max_terms
            )));
        }
    }
    Ok((sum.acc, sum.err_bound(k, 0.0)))
}

/// Kummer U(a, b, z) with b = 1 (the paper's mu = 0 case); z > 0.
pub fn kummer_u(a: f64, b: f64, z: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    Ok(kummer_u_with_deriv(a, b, z, cfg)?.0)
}

/// U(a,1,z) together with dU/dz, both by the same regime.
pub(crate) fn kummer_u_with_deriv(
    a: f64,
    b: f64,
    z: f64,
    cfg: &KernelConfig,
) -> QsfResult<(EvalResult, EvalResult)> {
    if (b - 1.0).abs() > 1e-12 {
        return Err(EvalError::Domain(format!(
            "Kummer U supports only b = 1 (got b = {b})"
        )));
    }
    if z <= 0.0 {
        return Err(EvalError::Domain(format!("Kummer U requires z > 0 (got {z})")));
    }
    if is_nonpos_int(a) {
        return u_laguerre((-a.round()) as usize, z);
    }
    if z <= 8.0 && a <= 8.0 {
        return u_log_series(a, z, cfg);
    }
    if a > 0.25 {
        return u_integral(a, z, cfg);
    }
    u_recurrence(a, z, cfg)
}

/// U(-n, 1, z) = (-1)^n n! L_n(z).
fn u_laguerre(n: usize, z: f64) -> QsfResult<(EvalResult, EvalResult)> {
    if n > 150 {
        return Err(EvalError::Overflow(format!(
            "U(-{n},1,z): n! exceeds the representable range"
        )));
    }
    let mut fact = 1.0f64;
    for j in 1..=n {
        fact *= j as f64;
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let (l, dl) = laguerre_poly(n, 0.0, z);
    Ok((
        EvalResult::new(sign * fact * l, (fact * l).abs() * 1e-13)?,
        EvalResult::new(sign * fact * dl, (fact * dl).abs() * 1e-13)?,
    ))
}

/// Logarithmic series for U(a,1,z):
/// U = -(1/Gamma(a)) sum_k (a)_k z^k/(k!)^2 [ln z + psi(a+k) - 2 psi(k+1)]
/// with the z-derivative summed termwise in the same pass.
fn u_log_series(a: f64, z: f64, cfg: &KernelConfig) -> QsfResult<(EvalResult, EvalResult)> {
    let ga = gamma_raw(a)?;
    let lnz = Dd::from_f64(z).ln();
    let zdd = Dd::from_f64(z);
    let mut sv = DdSum::new();
    let mut sd = DdSum::new();
    let mut coef = Dd::ONE; // (a)_k z^k / (k!)^2
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let br = lnz.add_f64(digamma(a + kf)? - 2.0 * digamma(kf + 1.0)?);
        sv.add(coef.mul(br));
        // d/dz term: coef * [k*br + 1] / z
        sd.add(coef.mul(br.mul_f64(kf).add_f64(1.0)));
        coef = coef.mul_f64(a + kf).mul(zdd).div_f64((kf + 1.0) * (kf + 1.0));
        k += 1;
        if coef.hi.abs() * (br.hi.abs() + 1.0) < 1e-33 * sv.acc.hi.abs().max(1e-300) {
            break;
        }
        if k > cfg.max_terms {
            return Err(EvalError::NonConvergence(format!(
                "Kummer U log series exceeded {} terms (a={a}, z={z})",
                cfg.max_terms
            )));
        }
    }
    let v = -sv.acc.to_f64() / ga;
    let d = -sd.acc.to_f64() / (ga * z);
    let ev = sv.err_bound(k, 0.0) / ga.abs() + v.abs() * 1e-15;
    let ed = sd.err_bound(k, 0.0) / (ga.abs() * z) + d.abs() * 1e-15;
    Ok((EvalResult::new(v, ev)?, EvalResult::new(d, ed)?))
}

/// Laplace integral over generalized Gauss-Laguerre nodes, valid for a > 0:
/// U(a,1,z)  = 1/(Gamma(a) z^a)     Int e^-u u^{a-1} (1+u/z)^-a du
/// U'(a,1,z) = -1/(Gamma(a) z^{a+1}) Int e^-u u^a     (1+u/z)^-a du
fn u_integral(a: f64, z: f64, cfg: &KernelConfig) -> QsfResult<(EvalResult, EvalResult)> {
    let nodes = cfg.quad_nodes.max(96);
    let ga = gamma_raw(a)?;
    let za = z.powf(a);
    if !(ga * za).is_finite() {
        return Err(EvalError::Overflow(format!(
            "Kummer U integral prefactor overflows (a={a}, z={z})"
        )));
    }
    let rule_v = gauss_laguerre_rule(nodes, a - 1.0)?;
    let iv = rule_v.integrate(|u| (1.0 + u / z).powf(-a))?;
    let rule_d = gauss_laguerre_rule(nodes, a)?;
    let id = rule_d.integrate(|u| (1.0 + u / z).powf(-a))?;
    let v = iv / (ga * za);
    let d = -id / (ga * za * z);
    Ok((
        EvalResult::new(v, v.abs() * 5e-13)?,
        EvalResult::new(d, d.abs() * 5e-13)?,
    ))
}

/// Downward recurrence U(A-1) = (2A-1+z) U(A) - A^2 U(A+1) carrying the
/// derivative pair dU(A-1) = U(A) + (2A-1+z) dU(A) - A^2 dU(A+1).
fn u_recurrence(a: f64, z: f64, cfg: &KernelConfig) -> QsfResult<(EvalResult, EvalResult)> {
    let m = (1.25 - a).ceil() as usize;
    let a_top = a + m as f64;
    let (u1v, u1d) = u_integral(a_top + 1.0, z, cfg)?;
    let (u0v, u0d) = u_integral(a_top, z, cfg)?;
    let (mut u1, mut du1) = (u1v.value, u1d.value);
    let (mut u0, mut du0) = (u0v.value, u0d.value);
    let mut aa = a_top;
    for _ in 0..m {
        let um = (2.0 * aa - 1.0 + z) * u0 - aa * aa * u1;
        let dum = u0 + (2.0 * aa - 1.0 + z) * du0 - aa * aa * du1;
        u1 = u0;
        du1 = du0;
        u0 = um;
        du0 = dum;
        aa -= 1.0;
    }
    Ok((
        EvalResult::new(u0, u0.abs() * 1e-12)?,
        EvalResult::new(du0, du0.abs() * 1e-12)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> KernelConfig {
        KernelConfig::default()
    }

    // pinned by the arbitrary-precision oracle
    const U_1_1_1: f64 = 5.9634736232319407e-01; // = e * E1(1)

    #[test]
    fn m_trivial_values() {
        assert_eq!(kummer_m(0.7, 1.3, 0.0, &cfg()).unwrap().value, 1.0);
        assert_relative_eq!(
            kummer_m(1.0, 1.0, 1.0, &cfg()).unwrap().value,
            std::f64::consts::E,
            max_relative = 1e-14
        );
        // M(-1,1,z) = 1 - z
        assert_relative_eq!(
            kummer_m(-1.0, 1.0, 0.5, &cfg()).unwrap().value,
            0.5,
            max_relative = 1e-14
        );
    }

    #[test]
    fn m_pole_on_nonpositive_b() {
        assert!(matches!(
            kummer_m(0.5, 0.0, 1.0, &cfg()),
            Err(EvalError::Pole(_))
        ));
        assert!(matches!(
            kummer_m(0.5, -2.0, 1.0, &cfg()),
            Err(EvalError::Pole(_))
        ));
    }

    #[test]
    fn u_trivial_and_pinned() {
        assert_relative_eq!(
            kummer_u(0.0, 1.0, 3.3, &cfg()).unwrap().value,
            1.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            kummer_u(1.0, 1.0, 1.0, &cfg()).unwrap().value,
            U_1_1_1,
            max_relative = 1e-12
        );
        // U(-1,1,2) = -(1)(L_1(2)) = -(1-2) = 1
        assert_relative_eq!(
            kummer_u(-1.0, 1.0, 2.0, &cfg()).unwrap().value,
            1.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn u_domain_errors() {
        assert!(matches!(
            kummer_u(1.0, 1.0, 0.0, &cfg()),
            Err(EvalError::Domain(_))
        ));
        assert!(matches!(
            kummer_u(1.0, 2.0, 1.0, &cfg()),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn u_regime_seams_agree() {
        // series vs integral on the z = 8 boundary for a in the overlap
        for &a in &[0.7, 2.3, 5.5] {
            let s = u_log_series(a, 7.9, &cfg()).unwrap().0.value;
            let i = u_integral(a, 7.9, &cfg()).unwrap().0.value;
            assert_relative_eq!(s, i, max_relative = 1e-11);
        }
        // recurrence vs series in the overlap corner (small a, moderate z)
        let r = u_recurrence(-2.4, 7.5, &cfg()).unwrap().0.value;
        let s = u_log_series(-2.4, 7.5, &cfg()).unwrap().0.value;
        assert_relative_eq!(r, s, max_relative = 1e-10);
    }

    #[test]
    fn u_derivative_matches_central_difference() {
        for &(a, z) in &[(0.7, 1.3), (3.2, 5.0), (11.0, 3.0), (-2.3, 11.0)] {
            let (_, d) = kummer_u_with_deriv(a, 1.0, z, &cfg()).unwrap();
            let h = 1e-6 * z;
            let up = kummer_u(a, 1.0, z + h, &cfg()).unwrap().value;
            let um = kummer_u(a, 1.0, z - h, &cfg()).unwrap().value;
            let fd = (up - um) / (2.0 * h);
            assert_relative_eq!(d.value, fd, max_relative = 1e-7);
        }
    }
}
