//! Gauss hypergeometric 2F1 for real parameters and z in [0, 1).
//!
//! Direct double-double series for z <= 1/2 (and for terminating series at
//! any z). For z > 1/2 the z -> 1-z connection formulas are used:
//!   - generic two-term form when c-a-b is not an integer,
//!   - the digamma/log form when c-a-b = m is an integer, m >= 0,
//!   - m < 0 reduced to m > 0 through the Euler transformation.
//! The integer case is the main path here, not a corner: every JP and
//! Legendre-P evaluation in this crate sits exactly on c-a-b = 0.

use crate::config::{EvalResult, KernelConfig};
use crate::dd::{Dd, DdSum};
use crate::error::{EvalError, QsfResult};
use crate::sfkernel::gamma::{digamma, gamma_raw, is_nonpos_int, rgamma};

/// Index at which the series terminates, if `v` is a non-positive integer.
fn terminates_at(v: f64) -> Option<usize> {
    if is_nonpos_int(v) {
        Some((-v.round()) as usize)
    } else {
        None
    }
}

/// 2F1(a, b; c; z). Preconditions: z in [0, 1) unless the series terminates
/// (a or b a non-positive integer no deeper than any c pole).
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    let term_n = match (terminates_at(a), terminates_at(b)) {
        (Some(n), Some(m)) => Some(n.min(m)),
        (Some(n), None) => Some(n),
        (None, Some(m)) => Some(m),
        (None, None) => None,
    };
    if let Some(cn) = terminates_at(c) {
        match term_n {
            Some(n) if n <= cn => {}
            _ => {
                return Err(EvalError::Pole(format!(
                    "2F1 pole: c = {c} is a non-positive integer and the series does not terminate first"
                )));
            }
        }
    }
    if let Some(n) = term_n {
        let (v, eb) = series_finite(a, b, c, z, n);
        return EvalResult::new(v, eb);
    }
    if !(0.0..1.0).contains(&z) {
        if z >= 1.0 && c - a - b <= 0.0 {
            return Err(EvalError::Divergence(format!(
                "2F1 diverges as z -> 1 with c-a-b = {} <= 0",
                c - a - b
            )));
        }
        return Err(EvalError::Domain(format!(
            "2F1 requires 0 <= z < 1 for non-terminating series (got {z})"
        )));
    }
    if z <= 0.5 {
        let (v, eb) = series_infinite(a, b, c, z, cfg)?;
        return EvalResult::new(v, eb);
    }
    let s = c - a - b;
    let m = s.round();
    if (s - m).abs() < 1e-9 {
        if m >= 0.0 {
            let (v, eb) = log_connection(a, b, m as usize, z, cfg)?;
            EvalResult::new(v, eb)
        } else {
            // Euler: F(a,b;c;z) = (1-z)^s F(c-a, c-b; c; z), and the new
            // parameter difference is +|m|
            let (v, eb) = log_connection(c - a, c - b, (-m) as usize, z, cfg)?;
            let w = (1.0 - z).powi(m as i32);
            EvalResult::new(v * w, eb * w.abs() + (v * w).abs() * 1e-15)
        }
    } else {
        let (v, eb) = generic_connection(a, b, c, z, cfg)?;
        EvalResult::new(v, eb)
    }
}

/// Terminating series, any real z.
fn series_finite(a: f64, b: f64, c: f64, z: f64, n: usize) -> (f64, f64) {
    let mut sum = DdSum::new();
    let mut term = Dd::ONE;
    let zdd = Dd::from_f64(z);
    for k in 0..=n {
        sum.add(term);
        if k == n {
            break;
        }
        let kf = k as f64;
        term = term
            .mul_f64(a + kf)
            .mul_f64(b + kf)
            .mul(zdd)
            .div_f64(c + kf)
            .div_f64(kf + 1.0);
    }
    let v = sum.acc.to_f64();
    (v, sum.err_bound(n + 1, 0.0) + v.abs() * 1e-16)
}

fn series_infinite(a: f64, b: f64, c: f64, z: f64, cfg: &KernelConfig) -> QsfResult<(f64, f64)> {
    let mut sum = DdSum::new();
    let mut term = Dd::ONE;
    let zdd = Dd::from_f64(z);
    let mut k = 0usize;
    loop {
        sum.add(term);
        let kf = k as f64;
        term = term
            .mul_f64(a + kf)
            .mul_f64(b + kf)
            .mul(zdd)
            .div_f64(c + kf)
            .div_f64(kf + 1.0);
        k += 1;
        if term.hi.abs() < 1e-33 * sum.acc.hi.abs().max(1e-300) {
            break;
        }
        if k > cfg.max_terms {
            return Err(EvalError::NonConvergence(format!(
                "2F1 series exceeded {} terms (a={a}, b={b}, c={c}, z={z})",
                cfg.max_terms
            )));
        }
    }
    let v = sum.acc.to_f64();
    Ok((v, sum.err_bound(k, term.hi.abs()) + v.abs() * 1e-16))
}

/// Generic z -> 1-z connection (non-integer c-a-b), A&S 15.3.6 structure.
fn generic_connection(a: f64, b: f64, c: f64, z: f64, cfg: &KernelConfig) -> QsfResult<(f64, f64)> {
    let w = 1.0 - z;
    let s = c - a - b;
    let gc = gamma_raw(c)?;
    let p1 = gc * gamma_raw(s)? * rgamma(c - a) * rgamma(c - b);
    let p2 = gc * gamma_raw(-s)? * rgamma(a) * rgamma(b) * w.powf(s);
    let (f1, e1) = series_infinite(a, b, a + b - c + 1.0, w, cfg)?;
    let (f2, e2) = series_infinite(c - a, c - b, c - a - b + 1.0, w, cfg)?;
    let v = p1 * f1 + p2 * f2;
    let eb = p1.abs() * e1 + p2.abs() * e2 + (p1 * f1).abs().max((p2 * f2).abs()) * 4e-15;
    Ok((v, eb))
}

/// Logarithmic connection for c = a + b + m, integer m >= 0
/// (A&S 15.3.10/15.3.11).
fn log_connection(a: f64, b: f64, m: usize, z: f64, cfg: &KernelConfig) -> QsfResult<(f64, f64)> {
    let w = 1.0 - z;
    let c = a + b + m as f64;
    let gc = gamma_raw(c)?;
    let mf = m as f64;

    // finite part: Gamma(m) Gamma(c)/(Gamma(a+m) Gamma(b+m)) *
    //              sum_{n<m} (a)_n (b)_n / (n! (1-m)_n) w^n
    let mut t1 = 0.0f64;
    let mut e1 = 0.0f64;
    if m > 0 {
        let pref = gamma_raw(mf)? * gc * rgamma(a + mf) * rgamma(b + mf);
        let mut sum = DdSum::new();
        let mut term = Dd::ONE;
        for n in 0..m {
            sum.add(term);
            if n + 1 < m {
                let nf = n as f64;
                term = term
                    .mul_f64(a + nf)
                    .mul_f64(b + nf)
                    .mul_f64(w)
                    .div_f64((nf + 1.0) * (1.0 - mf + nf));
            }
        }
        t1 = pref * sum.acc.to_f64();
        e1 = pref.abs() * sum.err_bound(m, 0.0) + t1.abs() * 2e-15;
    }

    // log part: (-1)^{m+1} Gamma(c)/(Gamma(a) Gamma(b)) w^m *
    //   sum_n (a+m)_n (b+m)_n/(n! (n+m)!) w^n
    //         [ln w - psi(n+1) - psi(n+m+1) + psi(a+n+m) + psi(b+n+m)]
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    let pref2 = sign * gc * rgamma(a) * rgamma(b) * w.powi(m as i32);
    let lnw = Dd::from_f64(w).ln();
    let mut fact_m = 1.0f64;
    for i in 1..=m {
        fact_m *= i as f64;
    }
    let mut sum = DdSum::new();
    let mut coef = Dd::ONE.div_f64(fact_m);
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        let br = lnw
            .add_f64(-digamma(nf + 1.0)?)
            .add_f64(-digamma(nf + mf + 1.0)?)
            .add_f64(digamma(a + nf + mf)?)
            .add_f64(digamma(b + nf + mf)?);
        sum.add(coef.mul(br));
        coef = coef
            .mul_f64(a + mf + nf)
            .mul_f64(b + mf + nf)
            .mul_f64(w)
            .div_f64((nf + 1.0) * (nf + mf + 1.0));
        n += 1;
        if coef.hi.abs() * (br.hi.abs() + 1.0) < 1e-33 * sum.acc.hi.abs().max(1e-300) {
            break;
        }
        if n > cfg.max_terms {
            return Err(EvalError::NonConvergence(format!(
                "2F1 log-connection series exceeded {} terms (a={a}, b={b}, m={m}, z={z})",
                cfg.max_terms
            )));
        }
    }
    let t2 = pref2 * sum.acc.to_f64();
    let e2 = pref2.abs() * sum.err_bound(n, 0.0) + t2.abs() * 4e-15;
    Ok((t1 + t2, e1 + e2 + (t1.abs() + t2.abs()) * 1e-16))
}

/// Regularized shift for a non-positive-integer third parameter c = -mc:
/// F~(a, b; -mc; z) * Gamma-free contribution, i.e.
/// (a)_{mc+1} (b)_{mc+1} / (mc+1)! * z^{mc+1} * 2F1(a+mc+1, b+mc+1; mc+2; z).
/// Returns the finite limit of 2F1(a,b;c;z)/Gamma(c) as c -> -mc.
pub(crate) fn hyp2f1_regularized_nonpos_c(
    a: f64,
    b: f64,
    mc: usize,
    z: f64,
    cfg: &KernelConfig,
) -> QsfResult<EvalResult> {
    let mut pref = 1.0f64;
    for j in 0..=mc {
        pref *= (a + j as f64) * (b + j as f64);
    }
    let mut fact = 1.0f64;
    for j in 1..=(mc + 1) {
        fact *= j as f64;
    }
    pref = pref / fact * z.powi(mc as i32 + 1);
    let f = gauss_2f1(a + mc as f64 + 1.0, b + mc as f64 + 1.0, mc as f64 + 2.0, z, cfg)?;
    EvalResult::new(pref * f.value, pref.abs() * f.abs_err_est + (pref * f.value).abs() * 1e-15)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> KernelConfig {
        KernelConfig::default()
    }

    // pinned by the arbitrary-precision oracle
    const F21_SPEC: f64 = 2.1356616629285714e+00;

    #[test]
    fn trivial_values() {
        assert_eq!(gauss_2f1(0.7, 1.9, 2.3, 0.0, &cfg()).unwrap().value, 1.0);
        // 2F1(a,b;b;z) = (1-z)^-a
        assert_relative_eq!(
            gauss_2f1(1.0, 2.0, 2.0, 0.5, &cfg()).unwrap().value,
            2.0,
            max_relative = 1e-13
        );
        // terminating: 1 - (3/2)(0.25)
        assert_relative_eq!(
            gauss_2f1(-1.0, 3.0, 2.0, 0.25, &cfg()).unwrap().value,
            0.625,
            max_relative = 1e-14
        );
    }

    #[test]
    fn pinned_connection_value() {
        assert_relative_eq!(
            gauss_2f1(0.5, 1.7, 2.2, 0.9, &cfg()).unwrap().value,
            F21_SPEC,
            max_relative = 1e-12
        );
    }

    #[test]
    fn pole_detection() {
        assert!(matches!(
            gauss_2f1(0.5, 1.7, -2.0, 0.3, &cfg()),
            Err(EvalError::Pole(_))
        ));
        // terminating before the c pole is fine: a = -1 ends at k=1, c = -2 poles at k=3
        assert!(gauss_2f1(-1.0, 1.7, -2.0, 0.3, &cfg()).is_ok());
    }

    #[test]
    fn divergence_at_one() {
        assert!(matches!(
            gauss_2f1(1.0, 1.5, 2.0, 1.0, &cfg()),
            Err(EvalError::Divergence(_))
        ));
    }

    #[test]
    fn euler_transformation_identity() {
        // F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z)
        let (a, b, c, z) = (0.37, 1.21, 2.83, 0.41);
        let lhs = gauss_2f1(a, b, c, z, &cfg()).unwrap().value;
        let rhs = (1.0 - z).powf(c - a - b) * gauss_2f1(c - a, c - b, c, z, &cfg()).unwrap().value;
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }

    #[test]
    fn seam_agreement_direct_vs_connection() {
        // non-integer c-a-b near the z = 1/2 seam
        for &(a, b, c) in &[(0.4, 1.3, 2.45), (0.9, 0.2, 1.77), (-1.5, 2.5, 1.25)] {
            for &z in &[0.45, 0.5, 0.55] {
                let direct = series_infinite(a, b, c, z, &cfg()).unwrap().0;
                let routed = gauss_2f1(a, b, c, z, &cfg()).unwrap().value;
                assert_relative_eq!(direct, routed, max_relative = 1e-10);
            }
        }
        // m = 0 log case on the seam
        let direct = series_infinite(0.6, 1.7, 2.3, 0.55, &cfg()).unwrap().0;
        let routed = gauss_2f1(0.6, 1.7, 2.3, 0.55, &cfg()).unwrap().value;
        assert_relative_eq!(direct, routed, max_relative = 1e-11);
    }

    #[test]
    fn regularized_shift_matches_series_limit() {
        // F~(a,b;0;z): compare against the definition through small c
        let (a, b, z) = (0.3, 1.1, 0.4);
        let shifted = hyp2f1_regularized_nonpos_c(a, b, 0, z, &cfg()).unwrap().value;
        let eps = 1e-7;
        let approx_lim = gauss_2f1(a, b, eps, z, &cfg()).unwrap().value
            / gamma_raw(eps).unwrap();
        assert_relative_eq!(shifted, approx_lim, max_relative = 1e-5);
    }
}
