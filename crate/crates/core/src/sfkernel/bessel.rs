//! Bessel J, Y and modified Bessel I, K of orders 0 and 1.
//!
//! Evaluation regimes:
//!   J, Y: double-double power series for x <= 18, Hankel asymptotic
//!         expansion beyond (truncated at its minimal term, ~e^{-2x}).
//!   I:    double-double power series everywhere (all terms positive).
//!   K:    double-double log series for x <= 19, asymptotic beyond.
//!
//! The alternating series lose ~e^{x} digits to cancellation in plain f64;
//! summing in double-double keeps every contract here below 1e-13 relative
//! up to the regime switch, where the asymptotic error floor has dropped
//! under 3e-16.

use crate::config::{EvalResult, KernelConfig};
use crate::dd::{consts, Dd, DdSum};
use crate::error::{EvalError, QsfResult};

/// The four classical kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselKind {
    J,
    Y,
    I,
    K,
}

impl std::fmt::Display for BesselKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BesselKind::J => "J",
            BesselKind::Y => "Y",
            BesselKind::I => "I",
            BesselKind::K => "K",
        };
        write!(f, "{s}")
    }
}

const JY_SERIES_MAX: f64 = 18.0;
const K_SERIES_MAX: f64 = 19.0;
const I_OVERFLOW_X: f64 = 650.0;

/// Bessel function of the given kind and order (0 or 1).
pub fn bessel(kind: BesselKind, order: u8, x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if order > 1 {
        return Err(EvalError::Domain(format!(
            "order must be 0 or 1 (got {order})"
        )));
    }
    match kind {
        BesselKind::Y | BesselKind::K => {
            if x <= 0.0 {
                return Err(EvalError::Domain(format!(
                    "{kind}{order} requires x > 0 (got {x})"
                )));
            }
        }
        BesselKind::J | BesselKind::I => {
            if x < 0.0 {
                return Err(EvalError::Domain(format!(
                    "{kind}{order} requires x >= 0 (got {x})"
                )));
            }
        }
    }
    match (kind, order) {
        (BesselKind::J, 0) => j0(x, cfg),
        (BesselKind::J, 1) => j1(x, cfg),
        (BesselKind::Y, 0) => y0(x, cfg),
        (BesselKind::Y, 1) => y1(x, cfg),
        (BesselKind::I, 0) => i0(x, cfg),
        (BesselKind::I, 1) => i1(x, cfg),
        (BesselKind::K, 0) => k0(x, cfg),
        (BesselKind::K, 1) => k1(x, cfg),
        _ => unreachable!(),
    }
}

/// First derivative with respect to x, from the order recurrences
/// J0' = -J1, J1' = J0 - J1/x (and the Y/I/K analogues).
pub fn bessel_dx(kind: BesselKind, order: u8, x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if order > 1 {
        return Err(EvalError::Domain(format!(
            "order must be 0 or 1 (got {order})"
        )));
    }
    let v = match (kind, order) {
        (BesselKind::J, 0) => {
            let j = bessel(BesselKind::J, 1, x, cfg)?;
            EvalResult::new(-j.value, j.abs_err_est)?
        }
        (BesselKind::Y, 0) => {
            let y = bessel(BesselKind::Y, 1, x, cfg)?;
            EvalResult::new(-y.value, y.abs_err_est)?
        }
        (BesselKind::I, 0) => bessel(BesselKind::I, 1, x, cfg)?,
        (BesselKind::K, 0) => {
            let k = bessel(BesselKind::K, 1, x, cfg)?;
            EvalResult::new(-k.value, k.abs_err_est)?
        }
        (_, 1) => {
            // Z1' = s*Z0 - Z1/x with s = -1 for K, +1 otherwise
            if x == 0.0 {
                // J1'(0) = 1/2, I1'(0) = 1/2; Y/K are domain errors caught below
                match kind {
                    BesselKind::J | BesselKind::I => return Ok(EvalResult::exact(0.5)),
                    _ => {}
                }
            }
            let z0v = bessel(kind, 0, x, cfg)?;
            let r = z1_over_u(kind, x, cfg)?;
            let s = if kind == BesselKind::K { -1.0 } else { 1.0 };
            EvalResult::new(
                s * z0v.value - r.value,
                z0v.abs_err_est + r.abs_err_est,
            )?
        }
        _ => unreachable!(),
    };
    Ok(v)
}

/// Z1(u)/u, evaluated stably through u = 0 (limit 1/2 for J and I); used by
/// the Bessel-type solution formulas, which contain exactly this ratio.
pub(crate) fn z1_over_u(kind: BesselKind, u: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    match kind {
        BesselKind::J | BesselKind::I => {
            if u < 0.0 {
                return Err(EvalError::Domain("z1_over_u requires u >= 0".into()));
            }
            let alt = kind == BesselKind::J;
            if (alt && u <= JY_SERIES_MAX) || !alt {
                if !alt && u > I_OVERFLOW_X {
                    return Err(EvalError::Overflow(format!("I1({u})/{u} overflows")));
                }
                // (1/2) sum_k (s q)^k / (k! (k+1)!), q = u^2/4
                let q = Dd::from_f64(u).mul_f64(u).div_f64(4.0);
                let sq = if alt { q.neg() } else { q };
                let mut sum = DdSum::new();
                let mut term = Dd::from_f64(0.5);
                let mut k = 0usize;
                loop {
                    sum.add(term);
                    term = term.mul(sq).div_f64(((k + 1) * (k + 2)) as f64);
                    k += 1;
                    if term.hi.abs() < 1e-34 * sum.acc.hi.abs().max(1e-300) {
                        break;
                    }
                    if k > cfg.max_terms {
                        return Err(EvalError::NonConvergence(format!(
                            "Z1({u})/u series exceeded {} terms",
                            cfg.max_terms
                        )));
                    }
                }
                let v = sum.acc.to_f64();
                EvalResult::new(v, sum.err_bound(k, 0.0) + v.abs() * 1e-16)
            } else {
                let j = bessel(kind, 1, u, cfg)?;
                EvalResult::new(j.value / u, j.abs_err_est / u)
            }
        }
        BesselKind::Y | BesselKind::K => {
            if u <= 0.0 {
                return Err(EvalError::Domain(format!(
                    "{kind}1(u)/u requires u > 0 (got {u})"
                )));
            }
            let z = bessel(kind, 1, u, cfg)?;
            EvalResult::new(z.value / u, z.abs_err_est / u)
        }
    }
}

// ---------------------------------------------------------------- series

/// J0 or I0 series in double-double: sum (s q)^k / (k!)^2, q = x^2/4.
fn z0_series(x: f64, alternating: bool, cfg: &KernelConfig) -> QsfResult<(Dd, f64, usize)> {
    let q = Dd::from_f64(x).mul_f64(x).div_f64(4.0);
    let sq = if alternating { q.neg() } else { q };
    let mut sum = DdSum::new();
    let mut term = Dd::ONE;
    let mut k = 0usize;
    loop {
        sum.add(term);
        k += 1;
        term = term.mul(sq).div_f64((k * k) as f64);
        if term.hi.abs() < 1e-34 * sum.acc.hi.abs().max(1e-300) {
            break;
        }
        if k > cfg.max_terms {
            return Err(EvalError::NonConvergence(format!(
                "Bessel order-0 series exceeded {} terms at x = {x}",
                cfg.max_terms
            )));
        }
    }
    let eb = sum.err_bound(k, 0.0);
    Ok((sum.acc, eb, k))
}

/// J1 or I1 series: (x/2) sum (s q)^k / (k! (k+1)!).
fn z1_series(x: f64, alternating: bool, cfg: &KernelConfig) -> QsfResult<(Dd, f64, usize)> {
    let q = Dd::from_f64(x).mul_f64(x).div_f64(4.0);
    let sq = if alternating { q.neg() } else { q };
    let mut sum = DdSum::new();
    let mut term = Dd::ONE;
    let mut k = 0usize;
    loop {
        sum.add(term);
        term = term.mul(sq).div_f64(((k + 1) * (k + 2)) as f64);
        k += 1;
        if term.hi.abs() < 1e-34 * sum.acc.hi.abs().max(1e-300) {
            break;
        }
        if k > cfg.max_terms {
            return Err(EvalError::NonConvergence(format!(
                "Bessel order-1 series exceeded {} terms at x = {x}",
                cfg.max_terms
            )));
        }
    }
    let v = sum.acc.mul_f64(x / 2.0);
    let eb = sum.err_bound(k, 0.0) * (x / 2.0);
    Ok((v, eb, k))
}

fn j0(x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if x <= JY_SERIES_MAX {
        let (v, eb, _) = z0_series(x, true, cfg)?;
        let v64 = v.to_f64();
        EvalResult::new(v64, eb + v64.abs() * 1e-16)
    } else {
        jy_asym(0, x, false)
    }
}

fn j1(x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if x <= JY_SERIES_MAX {
        let (v, eb, _) = z1_series(x, true, cfg)?;
        let v64 = v.to_f64();
        EvalResult::new(v64, eb + v64.abs() * 1e-16)
    } else {
        jy_asym(1, x, false)
    }
}

fn i0(x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if x > I_OVERFLOW_X {
        return Err(EvalError::Overflow(format!("I0({x}) overflows f64")));
    }
    let (v, eb, _) = z0_series(x, false, cfg)?;
    let v64 = v.to_f64();
    EvalResult::new(v64, eb + v64.abs() * 1e-16)
}

fn i1(x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if x > I_OVERFLOW_X {
        return Err(EvalError::Overflow(format!("I1({x}) overflows f64")));
    }
    let (v, eb, _) = z1_series(x, false, cfg)?;
    let v64 = v.to_f64();
    EvalResult::new(v64, eb + v64.abs() * 1e-16)
}

fn y0(x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if x > JY_SERIES_MAX {
        return jy_asym(0, x, true);
    }
    // Y0 = 2/pi [ (ln(x/2)+g) J0 + sum_{k>=1} (-1)^{k+1} H_k q^k/(k!)^2 ]
    let (j0dd, j0err, _) = z0_series(x, true, cfg)?;
    let lg = Dd::from_f64(x / 2.0).ln().add(consts::EULER_GAMMA);
    let q = Dd::from_f64(x).mul_f64(x).div_f64(4.0);
    let mut sum = DdSum::new();
    let mut pk = Dd::ONE; // q^k/(k!)^2
    let mut hk = Dd::ZERO;
    let mut k = 0usize;
    loop {
        k += 1;
        pk = pk.mul(q).div_f64((k * k) as f64);
        hk = hk.add_f64(1.0 / k as f64);
        let sgn = if k % 2 == 1 { 1.0 } else { -1.0 };
        sum.add(pk.mul(hk).mul_f64(sgn));
        if pk.hi * hk.hi < 1e-34 * sum.acc.hi.abs().max(1e-300) {
            break;
        }
        if k > cfg.max_terms {
            return Err(EvalError::NonConvergence(format!(
                "Y0 series exceeded {} terms at x = {x}",
                cfg.max_terms
            )));
        }
    }
    let total = lg.mul(j0dd).add(sum.acc).mul_f64(2.0 / std::f64::consts::PI);
    let v = total.to_f64();
    let eb = (sum.err_bound(k, 0.0) + j0err * lg.hi.abs()) * (2.0 / std::f64::consts::PI);
    EvalResult::new(v, eb + v.abs() * 1e-16)
}

fn y1(x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if x > JY_SERIES_MAX {
        return jy_asym(1, x, true);
    }
    // Y1 = 2/pi [ ln(x/2) J1 - 1/x - x/4 sum_k (H_k + H_{k+1} - 2g)(-q)^k/(k!(k+1)!) ]
    let (j1dd, j1err, _) = z1_series(x, true, cfg)?;
    let lg = Dd::from_f64(x / 2.0).ln();
    let q = Dd::from_f64(x).mul_f64(x).div_f64(4.0);
    let mut sum = DdSum::new();
    let mut pk = Dd::ONE; // (-q)^k / (k!(k+1)!)
    let mut hk = Dd::ZERO; // H_k
    let mut hk1 = Dd::ONE; // H_{k+1}
    let g2 = consts::EULER_GAMMA.mul_f64(2.0);
    let mut k = 0usize;
    loop {
        sum.add(pk.mul(hk.add(hk1).sub(g2)));
        pk = pk.mul(q.neg()).div_f64(((k + 1) * (k + 2)) as f64);
        k += 1;
        hk = hk.add_f64(1.0 / k as f64);
        hk1 = hk1.add_f64(1.0 / (k + 1) as f64);
        if pk.hi.abs() * (hk.hi + hk1.hi) < 1e-34 * sum.acc.hi.abs().max(1e-300) {
            break;
        }
        if k > cfg.max_terms {
            return Err(EvalError::NonConvergence(format!(
                "Y1 series exceeded {} terms at x = {x}",
                cfg.max_terms
            )));
        }
    }
    let total = lg
        .mul(j1dd)
        .sub(Dd::ONE.div_f64(x))
        .sub(sum.acc.mul_f64(x / 4.0))
        .mul_f64(2.0 / std::f64::consts::PI);
    let v = total.to_f64();
    let eb = (sum.err_bound(k, 0.0) * (x / 4.0) + j1err * lg.hi.abs())
        * (2.0 / std::f64::consts::PI);
    EvalResult::new(v, eb + v.abs() * 1e-16)
}

fn k0(x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if x > K_SERIES_MAX {
        return k_asym(0, x);
    }
    // K0 = -(ln(x/2)+g) I0 + sum_{k>=1} H_k q^k/(k!)^2
    let (i0dd, i0err, _) = z0_series(x, false, cfg)?;
    let lg = Dd::from_f64(x / 2.0).ln().add(consts::EULER_GAMMA);
    let q = Dd::from_f64(x).mul_f64(x).div_f64(4.0);
    let mut sum = DdSum::new();
    let mut pk = Dd::ONE;
    let mut hk = Dd::ZERO;
    let mut k = 0usize;
    loop {
        k += 1;
        pk = pk.mul(q).div_f64((k * k) as f64);
        hk = hk.add_f64(1.0 / k as f64);
        sum.add(pk.mul(hk));
        if pk.hi * hk.hi < 1e-34 * sum.acc.hi.abs().max(1e-300) {
            break;
        }
        if k > cfg.max_terms {
            return Err(EvalError::NonConvergence(format!(
                "K0 series exceeded {} terms at x = {x}",
                cfg.max_terms
            )));
        }
    }
    let total = sum.acc.sub(lg.mul(i0dd));
    let v = total.to_f64();
    // cancellation here is between lg*I0 and the sum; DdSum only saw the sum
    let cancel = lg.hi.abs() * i0dd.hi.abs();
    let eb = sum.err_bound(k, 0.0) + i0err * lg.hi.abs() + cancel * crate::dd::DD_EPS * 8.0;
    EvalResult::new(v, eb + v.abs() * 1e-16)
}

fn k1(x: f64, cfg: &KernelConfig) -> QsfResult<EvalResult> {
    if x > K_SERIES_MAX {
        return k_asym(1, x);
    }
    // K1 = 1/x + ln(x/2) I1 - x/4 sum_k (H_k + H_{k+1} - 2g) q^k/(k!(k+1)!)
    let (i1dd, i1err, _) = z1_series(x, false, cfg)?;
    let lg = Dd::from_f64(x / 2.0).ln();
    let q = Dd::from_f64(x).mul_f64(x).div_f64(4.0);
    let mut sum = DdSum::new();
    let mut pk = Dd::ONE;
    let mut hk = Dd::ZERO;
    let mut hk1 = Dd::ONE;
    let g2 = consts::EULER_GAMMA.mul_f64(2.0);
    let mut k = 0usize;
    loop {
        sum.add(pk.mul(hk.add(hk1).sub(g2)));
        pk = pk.mul(q).div_f64(((k + 1) * (k + 2)) as f64);
        k += 1;
        hk = hk.add_f64(1.0 / k as f64);
        hk1 = hk1.add_f64(1.0 / (k + 1) as f64);
        if pk.hi.abs() * (hk.hi + hk1.hi) < 1e-34 * sum.acc.hi.abs().max(1e-300) {
            break;
        }
        if k > cfg.max_terms {
            return Err(EvalError::NonConvergence(format!(
                "K1 series exceeded {} terms at x = {x}",
                cfg.max_terms
            )));
        }
    }
    let total = Dd::ONE
        .div_f64(x)
        .add(lg.mul(i1dd))
        .sub(sum.acc.mul_f64(x / 4.0));
    let v = total.to_f64();
    let cancel = lg.hi.abs() * i1dd.hi.abs();
    let eb = sum.err_bound(k, 0.0) * (x / 4.0) + i1err * lg.hi.abs()
        + cancel * crate::dd::DD_EPS * 8.0;
    EvalResult::new(v, eb + v.abs() * 1e-16)
}

// ------------------------------------------------------------ asymptotics

/// Hankel expansion for J/Y at large x. Terms are summed until the minimal
/// one; its size (~e^{-2x}) bounds the truncation error.
fn jy_asym(order: u8, x: f64, second_kind: bool) -> QsfResult<EvalResult> {
    let mu = 4.0 * (order as f64) * (order as f64);
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut min_term = 1.0f64;
    let mut k = 0usize;
    loop {
        let t = term;
        match k % 4 {
            0 => p += t,
            1 => q += t,
            2 => p -= t,
            _ => q -= t,
        }
        let next = term * (mu - ((2 * k + 1) * (2 * k + 1)) as f64) / ((k + 1) as f64 * 8.0 * x);
        if next.abs() >= term.abs() || next.abs() < 1e-20 {
            min_term = next.abs().min(term.abs());
            break;
        }
        term = next;
        k += 1;
        if k > 200 {
            break;
        }
    }
    // phase chi = x - (order/2 + 1/4) pi, reduced mod 2 pi in double-double
    let shift = if order == 0 {
        consts::PI_OVER_4
    } else {
        consts::THREE_PI_OVER_4
    };
    let chi = Dd::from_f64(x).sub(shift);
    let n = (chi.hi / (2.0 * std::f64::consts::PI)).round();
    let chi = chi.sub(consts::TWO_PI.mul_f64(n));
    let (s, c) = chi.hi.sin_cos();
    let cosx = c - s * chi.lo;
    let sinx = s + c * chi.lo;
    let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
    let v = if second_kind {
        amp * (p * sinx + q * cosx)
    } else {
        amp * (p * cosx - q * sinx)
    };
    EvalResult::new(v, amp * (min_term + 1e-16 * (p.abs() + q.abs())))
}

fn k_asym(order: u8, x: f64) -> QsfResult<EvalResult> {
    let mu = 4.0 * (order as f64) * (order as f64);
    let mut sum = 0.0f64;
    let mut term = 1.0f64;
    let mut min_term = 1.0f64;
    let mut k = 0usize;
    loop {
        sum += term;
        let next = term * (mu - ((2 * k + 1) * (2 * k + 1)) as f64) / ((k + 1) as f64 * 8.0 * x);
        if next.abs() >= term.abs() || next.abs() < 1e-20 {
            min_term = next.abs().min(term.abs());
            break;
        }
        term = next;
        k += 1;
        if k > 200 {
            break;
        }
    }
    let amp = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
    if amp == 0.0 {
        return EvalResult::new(0.0, f64::MIN_POSITIVE);
    }
    EvalResult::new(amp * sum, amp * (min_term + 1e-16 * sum.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> KernelConfig {
        KernelConfig::default()
    }

    // pinned by the arbitrary-precision oracle
    const K0_1: f64 = 4.2102443824070834e-01;

    #[test]
    fn trivial_values() {
        assert_eq!(bessel(BesselKind::J, 0, 0.0, &cfg()).unwrap().value, 1.0);
        assert_eq!(bessel(BesselKind::I, 1, 0.0, &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn first_zero_of_j0() {
        // first zero located by bisection on the oracle series
        let v = bessel(BesselKind::J, 0, 2.404825557695773, &cfg()).unwrap().value;
        assert!(v.abs() < 1e-12, "J0 at its first zero: {v}");
    }

    #[test]
    fn k0_pinned() {
        assert_relative_eq!(
            bessel(BesselKind::K, 0, 1.0, &cfg()).unwrap().value,
            K0_1,
            max_relative = 1e-13
        );
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            bessel(BesselKind::Y, 0, 0.0, &cfg()),
            Err(EvalError::Domain(_))
        ));
        assert!(matches!(
            bessel(BesselKind::K, 1, -2.0, &cfg()),
            Err(EvalError::Domain(_))
        ));
        assert!(matches!(
            bessel(BesselKind::J, 0, -0.5, &cfg()),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn modified_wronskian() {
        // I0 K1 + I1 K0 = 1/x
        for &x in &[0.1, 0.9, 3.3, 7.7, 15.0, 20.0] {
            let i0 = bessel(BesselKind::I, 0, x, &cfg()).unwrap().value;
            let i1 = bessel(BesselKind::I, 1, x, &cfg()).unwrap().value;
            let k0 = bessel(BesselKind::K, 0, x, &cfg()).unwrap().value;
            let k1 = bessel(BesselKind::K, 1, x, &cfg()).unwrap().value;
            assert_relative_eq!(i0 * k1 + i1 * k0, 1.0 / x, max_relative = 1e-10);
        }
    }

    #[test]
    fn series_asymptotic_seam() {
        // both regimes agree across the switch points
        for (kind, seam) in [
            (BesselKind::J, JY_SERIES_MAX),
            (BesselKind::Y, JY_SERIES_MAX),
            (BesselKind::K, K_SERIES_MAX),
        ] {
            for order in [0u8, 1] {
                let lo = bessel(kind, order, seam - 1e-9, &cfg()).unwrap().value;
                let hi = bessel(kind, order, seam + 1e-9, &cfg()).unwrap().value;
                assert_relative_eq!(lo, hi, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn dx_at_zero() {
        assert_eq!(bessel_dx(BesselKind::J, 0, 0.0, &cfg()).unwrap().value, 0.0);
        assert_eq!(bessel_dx(BesselKind::J, 1, 0.0, &cfg()).unwrap().value, 0.5);
    }

    #[test]
    fn z1_over_u_limit() {
        let r = z1_over_u(BesselKind::J, 0.0, &cfg()).unwrap().value;
        assert_eq!(r, 0.5);
        let r = z1_over_u(BesselKind::I, 0.0, &cfg()).unwrap().value;
        assert_eq!(r, 0.5);
        // matches J1(u)/u away from zero
        let u = 2.7;
        let j1 = bessel(BesselKind::J, 1, u, &cfg()).unwrap().value;
        let r = z1_over_u(BesselKind::J, u, &cfg()).unwrap().value;
        assert_relative_eq!(r, j1 / u, max_relative = 1e-13);
    }

    #[test]
    fn overflow_reported() {
        assert!(matches!(
            bessel(BesselKind::I, 0, 700.0, &cfg()),
            Err(EvalError::Overflow(_))
        ));
    }
}
