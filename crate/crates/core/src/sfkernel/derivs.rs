//! Derivative utilities: extending (y, y') to higher orders through a
//! second-order linear ODE, Richardson-extrapolated central differences for
//! cross-checks, and the stencil that supplies fourth derivatives to the
//! operator residuals.

use crate::error::{EvalError, QsfResult};

/// Given y'' = p(x) y' + q(x) y and the values y, y' at a point, returns
/// [y, y', ..., y^(order)]. `p_derivs(j)`/`q_derivs(j)` evaluate the j-th
/// derivatives of the coefficients at the same point; differentiating the
/// ODE k times gives
///   y^(k+2) = sum_j C(k,j) [ p^(j) y^(k+1-j) + q^(j) y^(k-j) ].
pub(crate) fn ode2_chain(
    y0: f64,
    y1: f64,
    p_derivs: &dyn Fn(usize) -> f64,
    q_derivs: &dyn Fn(usize) -> f64,
    order: usize,
) -> Vec<f64> {
    let mut y = Vec::with_capacity(order + 1);
    y.push(y0);
    if order >= 1 {
        y.push(y1);
    }
    for k in 0..order.saturating_sub(1) {
        let mut acc = 0.0;
        let mut binom = 1.0f64;
        for j in 0..=k {
            acc += binom * (p_derivs(j) * y[k + 1 - j] + q_derivs(j) * y[k - j]);
            binom *= (k - j) as f64 / (j + 1) as f64;
        }
        y.push(acc);
    }
    y
}

/// Richardson-extrapolated central difference of the first derivative,
/// used by tests as the independent cross-check on analytic derivatives.
pub fn richardson_first_derivative(f: &dyn Fn(f64) -> QsfResult<f64>, x: f64, h: f64) -> QsfResult<f64> {
    let d = |h: f64| -> QsfResult<f64> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
    let d1 = d(h)?;
    let d2 = d(h / 2.0)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

const STENCIL_OFFSETS: [i32; 7] = [-3, -2, -1, 0, 1, 2, 3];
const STENCIL_COEFFS: [f64; 7] = [
    1.0 / 90.0,
    -3.0 / 20.0,
    1.5,
    -49.0 / 18.0,
    1.5,
    -3.0 / 20.0,
    1.0 / 90.0,
];

fn second_derivative_stencil(
    f: &dyn Fn(f64) -> QsfResult<f64>,
    x: f64,
    h: f64,
) -> QsfResult<f64> {
    let mut acc = 0.0;
    for (off, c) in STENCIL_OFFSETS.iter().zip(&STENCIL_COEFFS) {
        acc += c * f(x + *off as f64 * h)?;
    }
    Ok(acc / (h * h))
}

/// Fourth derivative of y obtained as the second derivative of the analytic
/// y'' via a 6th-order 7-point stencil with one Richardson step,
/// h = eps^{1/6} max(1, |x|). Differentiating the analytic second
/// derivative twice loses far less precision than differencing y four times.
pub(crate) fn fourth_derivative_from_y2(
    y2: &dyn Fn(f64) -> QsfResult<f64>,
    x: f64,
) -> QsfResult<f64> {
    let h = f64::EPSILON.powf(1.0 / 6.0) * x.abs().max(1.0);
    let d1 = second_derivative_stencil(y2, x, h)?;
    let d2 = second_derivative_stencil(y2, x, h / 2.0)?;
    // 6th-order stencil: Richardson factor 2^6
    let v = (64.0 * d2 - d1) / 63.0;
    if !v.is_finite() {
        return Err(EvalError::NonFinite(
            "fourth-derivative stencil produced a non-finite value".into(),
        ));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn chain_reproduces_exponential() {
        // y = e^{2x}: y'' = 4y -> p = 0, q = 4
        let x = 0.7f64;
        let y = (2.0 * x).exp();
        let d = ode2_chain(y, 2.0 * y, &|_| 0.0, &|j| if j == 0 { 4.0 } else { 0.0 }, 4);
        for (k, v) in d.iter().enumerate() {
            assert_relative_eq!(*v, 2.0f64.powi(k as i32) * y, max_relative = 1e-13);
        }
    }

    #[test]
    fn chain_with_variable_coefficients() {
        // y = x^3 solves y'' = (2/x) y' - ... pick y'' = p y' + q y with
        // p = 2/x, q = 0: check: p y' = (2/x)(3x^2) = 6x = y'' OK
        let x = 1.3f64;
        let p = |j: usize| {
            let mut fact = 1.0;
            for i in 1..=j {
                fact *= i as f64;
            }
            2.0 * (if j % 2 == 0 { 1.0 } else { -1.0 }) * fact / x.powi(j as i32 + 1)
        };
        let d = ode2_chain(x * x * x, 3.0 * x * x, &p, &|_| 0.0, 4);
        assert_relative_eq!(d[2], 6.0 * x, max_relative = 1e-13);
        assert_relative_eq!(d[3], 6.0, max_relative = 1e-12);
        assert!(d[4].abs() < 1e-11);
    }

    #[test]
    fn fourth_derivative_on_analytic_functions() {
        // sin: y'' = -sin, y'''' = sin
        let y2 = |t: f64| -> QsfResult<f64> { Ok(-t.sin()) };
        let x = 1.1;
        let v = fourth_derivative_from_y2(&y2, x).unwrap();
        assert_relative_eq!(v, x.sin(), max_relative = 1e-6);
        // exp: all derivatives e^x
        let y2 = |t: f64| -> QsfResult<f64> { Ok(t.exp()) };
        let v = fourth_derivative_from_y2(&y2, 0.4).unwrap();
        assert_relative_eq!(v, 0.4f64.exp(), max_relative = 1e-6);
    }

    #[test]
    fn richardson_first_derivative_on_exp() {
        let f = |t: f64| -> QsfResult<f64> { Ok(t.exp()) };
        let d = richardson_first_derivative(&f, 0.9, 1e-4).unwrap();
        assert_relative_eq!(d, 0.9f64.exp(), max_relative = 1e-9);
    }
}
