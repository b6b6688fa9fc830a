//! Gamma and digamma for real arguments.
//!
//! Gamma uses the Lanczos approximation (g = 7, n = 9; Godfrey/GSL
//! coefficients) on [0.5, inf) and the reflection formula below 0.5.
//! Digamma uses upward recurrence to x >= 10 followed by the Bernoulli
//! asymptotic series, with reflection for x < 0.5.

use crate::config::EvalResult;
use crate::error::{EvalError, QsfResult};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// sin(pi x) with argument reduction that stays accurate for large |x|.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - x.round();
    let s = (std::f64::consts::PI * r).sin();
    if (x.round() as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

/// cos(pi x) via the reduced remainder.
pub(crate) fn cos_pi(x: f64) -> f64 {
    let r = x - x.round();
    let c = (std::f64::consts::PI * r).cos();
    if (x.round() as i64).rem_euclid(2) == 0 {
        c
    } else {
        -c
    }
}

pub(crate) fn is_nonpos_int(x: f64) -> bool {
    x <= 0.5 && (x - x.round()).abs() < 1e-10 && x.round() <= 0.0
}

fn lanczos_gamma(x: f64) -> f64 {
    // valid for x >= 0.5
    let xm1 = x - 1.0;
    let mut t = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        t += c / (xm1 + i as f64);
    }
    let w = xm1 + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * w.powf(xm1 + 0.5) * (-w).exp() * t
}

/// Gamma(x) for real x not a non-positive integer.
pub fn gamma_fn(x: f64) -> QsfResult<EvalResult> {
    let v = gamma_raw(x)?;
    if !v.is_finite() {
        return Err(EvalError::Overflow(format!(
            "Gamma({x}) exceeds the representable range"
        )));
    }
    EvalResult::new(v, v.abs() * 1e-15)
}

/// Raw Gamma; poles report an error, overflow passes through as inf for the
/// wrapper to classify.
pub(crate) fn gamma_raw(x: f64) -> QsfResult<f64> {
    if !x.is_finite() {
        return Err(EvalError::Domain("gamma requires finite x".into()));
    }
    if is_nonpos_int(x) {
        return Err(EvalError::Pole(format!(
            "Gamma pole at non-positive integer x = {x}"
        )));
    }
    if x >= 0.5 {
        Ok(lanczos_gamma(x))
    } else {
        // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
        Ok(std::f64::consts::PI / (sin_pi(x) * lanczos_gamma(1.0 - x)))
    }
}

/// 1/Gamma(x), zero at the poles. Entire, so no error cases.
pub(crate) fn rgamma(x: f64) -> f64 {
    if is_nonpos_int(x) {
        return 0.0;
    }
    match gamma_raw(x) {
        Ok(v) if v.is_finite() => 1.0 / v,
        _ => 0.0,
    }
}

/// Pochhammer symbol (a)_n as an f64 product.
pub(crate) fn pochhammer(a: f64, n: usize) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}

const DIGAMMA_BERNOULLI: [f64; 7] = [
    0.08333333333333333,    // 1/12
    -0.008333333333333333,  // -1/120
    0.003968253968253968,   // 1/252
    -0.004166666666666667,  // -1/240
    0.007575757575757576,   // 1/132
    -0.021092796092796094,  // -691/32760
    0.08333333333333333,    // 1/12
];

/// Digamma for real x away from non-positive integers.
pub(crate) fn digamma(x: f64) -> QsfResult<f64> {
    if is_nonpos_int(x) {
        return Err(EvalError::Pole(format!(
            "digamma pole at non-positive integer x = {x}"
        )));
    }
    if x < 0.5 {
        // psi(x) = psi(1-x) - pi cot(pi x)
        let cot = cos_pi(x) / sin_pi(x);
        return Ok(digamma_positive(1.0 - x) - std::f64::consts::PI * cot);
    }
    Ok(digamma_positive(x))
}

fn digamma_positive(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut t = inv2;
    let mut r = x.ln() - 0.5 / x;
    for &b in &DIGAMMA_BERNOULLI {
        r -= b * t;
        t *= inv2;
    }
    r + shift
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // pinned by the arbitrary-precision oracle
    const GAMMA_7_25: f64 = 1.1553810139199898e+03;

    #[test]
    fn gamma_trivial_values() {
        assert_relative_eq!(gamma_fn(1.0).unwrap().value, 1.0, max_relative = 1e-14);
        assert_relative_eq!(
            gamma_fn(0.5).unwrap().value,
            1.7724538509055160,
            max_relative = 1e-14
        );
    }

    #[test]
    fn gamma_pinned_oracle() {
        assert_relative_eq!(gamma_fn(7.25).unwrap().value, GAMMA_7_25, max_relative = 1e-13);
    }

    #[test]
    fn gamma_poles_and_overflow() {
        assert!(matches!(gamma_fn(0.0), Err(EvalError::Pole(_))));
        assert!(matches!(gamma_fn(-3.0), Err(EvalError::Pole(_))));
        assert!(matches!(gamma_fn(200.0), Err(EvalError::Overflow(_))));
    }

    #[test]
    fn gamma_functional_equation() {
        for &x in &[0.3, 1.7, -2.3, 5.5, -7.8, 23.1] {
            let g1 = gamma_fn(x + 1.0).unwrap().value;
            let g0 = gamma_fn(x).unwrap().value;
            assert_relative_eq!(g1, x * g0, max_relative = 1e-12);
        }
    }

    #[test]
    fn rgamma_zero_at_poles() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-5.0), 0.0);
        assert_relative_eq!(rgamma(3.0), 0.5, max_relative = 1e-14);
    }

    #[test]
    fn digamma_reflection_consistency() {
        // psi(1) = -EulerGamma
        assert_relative_eq!(digamma(1.0).unwrap(), -0.5772156649015329, max_relative = 1e-13);
        // recurrence psi(x+1) = psi(x) + 1/x across reflection
        for &x in &[-3.3, -0.7, 0.2, 4.6] {
            let a = digamma(x + 1.0).unwrap();
            let b = digamma(x).unwrap() + 1.0 / x;
            assert_relative_eq!(a, b, max_relative = 1e-11, epsilon = 1e-12);
        }
    }
}
