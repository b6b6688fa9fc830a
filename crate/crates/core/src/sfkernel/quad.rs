//! Gauss-Jacobi (weight (1-x)^alpha on (-1,1)) and generalized Gauss-Laguerre
//! (weight x^alpha e^-x on (0,inf)) rules.
//!
//! Nodes are polynomial roots located by sign-change bracketing plus
//! bisection, polished by Newton to ~1e-15. Rules are cached per
//! (family, alpha, n); the memo has a single writer at first use and
//! lock-free reads thereafter via Arc clones.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{EvalError, QsfResult};

/// An n-point quadrature rule.
#[derive(Debug, Clone)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    /// Applies the rule to `f`, failing on non-finite samples.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> QsfResult<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x);
            if !v.is_finite() {
                return Err(EvalError::Quadrature(format!(
                    "integrand not finite at node x = {x}"
                )));
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

#[derive(PartialEq, Eq, Hash, Clone, Copy)]
enum Family {
    Jacobi,
    Laguerre,
}

type Cache = Mutex<HashMap<(Family, u64, usize), Arc<QuadRule>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Jacobi polynomial P_n^{(alpha,0)} and its derivative by the three-term
/// recurrence (A&S 22.7 with beta = 0).
pub(crate) fn jacobi_poly(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = (alpha + 2.0) / 2.0 * x + alpha / 2.0;
    for k in 2..=n {
        let kf = k as f64;
        let a1 = 2.0 * kf * (kf + alpha) * (2.0 * kf + alpha - 2.0);
        let a2 = (2.0 * kf + alpha - 1.0) * alpha * alpha;
        let a3 = (2.0 * kf + alpha - 2.0) * (2.0 * kf + alpha - 1.0) * (2.0 * kf + alpha);
        let a4 = 2.0 * (kf + alpha - 1.0) * (kf - 1.0) * (2.0 * kf + alpha);
        let p_next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = p_next;
    }
    // (2n+alpha)(1-x^2) P_n' = n[alpha-(2n+alpha)x] P_n + 2(n+alpha) n P_{n-1}
    let nf = n as f64;
    let dp = (nf * (alpha - (2.0 * nf + alpha) * x) * p + 2.0 * (nf + alpha) * nf * p_prev)
        / ((2.0 * nf + alpha) * (1.0 - x * x));
    (p, dp)
}

/// Generalized Laguerre L_n^{(alpha)} and derivative.
pub(crate) fn laguerre_poly(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut l_prev = 1.0;
    let mut l = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let l_next = ((2.0 * kf + 1.0 + alpha - x) * l - (kf + alpha) * l_prev) / (kf + 1.0);
        l_prev = l;
        l = l_next;
    }
    // x L_n' = n L_n - (n+alpha) L_{n-1}
    let nf = n as f64;
    let dl = if x != 0.0 {
        (nf * l - (nf + alpha) * l_prev) / x
    } else {
        -nf // L_n'(0) for alpha = 0; unused in practice (nodes are interior)
    };
    (l, dl)
}

fn find_roots(
    mut f: impl FnMut(f64) -> f64,
    samples: &[f64],
    n_expected: usize,
) -> QsfResult<Vec<f64>> {
    let mut roots = Vec::with_capacity(n_expected);
    let mut prev_x = samples[0];
    let mut prev_v = f(prev_x);
    for &x in &samples[1..] {
        let v = f(x);
        if prev_v == 0.0 {
            roots.push(prev_x);
        } else if prev_v * v < 0.0 {
            let (mut lo, mut hi) = (prev_x, x);
            let mut flo = prev_v;
            for _ in 0..90 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
                if hi - lo < 1e-15 * (1.0 + mid.abs()) {
                    break;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    if roots.len() != n_expected {
        return Err(EvalError::Quadrature(format!(
            "expected {n_expected} roots, bracketed {}",
            roots.len()
        )));
    }
    Ok(roots)
}

/// n-point Gauss-Jacobi rule for weight (1-x)^alpha (beta = 0), alpha > -1.
pub fn gauss_jacobi_rule(n: usize, alpha: f64) -> QsfResult<Arc<QuadRule>> {
    if !(alpha > -1.0) {
        return Err(EvalError::Domain(format!(
            "Gauss-Jacobi requires alpha > -1 (got {alpha})"
        )));
    }
    if n == 0 {
        return Err(EvalError::Domain("node count must be positive".into()));
    }
    let key = (Family::Jacobi, alpha.to_bits(), n);
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    // Chebyshev-distributed sampling resolves the endpoint clustering
    let n_samp = 16 * n + 64;
    let samples: Vec<f64> = (0..=n_samp)
        .map(|j| -((std::f64::consts::PI * j as f64 / n_samp as f64).cos()) * (1.0 - 1e-12))
        .collect();
    let mut roots = find_roots(|x| jacobi_poly(n, alpha, x).0, &samples, n)?;
    for r in &mut roots {
        for _ in 0..3 {
            let (p, dp) = jacobi_poly(n, alpha, *r);
            let step = p / dp;
            if step.is_finite() {
                *r -= step;
            }
        }
    }
    // w_k = 2^{alpha+1} / [(1 - x_k^2) P_n'(x_k)^2]  (beta = 0 collapses the
    // usual Gamma-ratio prefactor to 2^{alpha+1})
    let c = (alpha + 1.0).exp2();
    let weights: Vec<f64> = roots
        .iter()
        .map(|&x| {
            let (_, dp) = jacobi_poly(n, alpha, x);
            c / ((1.0 - x * x) * dp * dp)
        })
        .collect();
    let rule = Arc::new(QuadRule {
        nodes: roots,
        weights,
    });
    cache().lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// n-point generalized Gauss-Laguerre rule for weight x^alpha e^-x, alpha > -1.
pub fn gauss_laguerre_rule(n: usize, alpha: f64) -> QsfResult<Arc<QuadRule>> {
    if !(alpha > -1.0) {
        return Err(EvalError::Domain(format!(
            "Gauss-Laguerre requires alpha > -1 (got {alpha})"
        )));
    }
    if n == 0 {
        return Err(EvalError::Domain("node count must be positive".into()));
    }
    let key = (Family::Laguerre, alpha.to_bits(), n);
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let upper = 4.0 * n as f64 + 2.0 * alpha.max(0.0) + 12.0;
    let n_samp = 24 * n + 64;
    // quadratic clustering toward 0 where the small roots live
    let samples: Vec<f64> = (1..=n_samp)
        .map(|j| {
            let t = j as f64 / n_samp as f64;
            upper * t * t
        })
        .collect();
    let mut roots = find_roots(|x| laguerre_poly(n, alpha, x).0, &samples, n)?;
    for r in &mut roots {
        for _ in 0..3 {
            let (l, dl) = laguerre_poly(n, alpha, *r);
            let step = l / dl;
            if step.is_finite() {
                *r -= step;
            }
        }
    }
    // w_k = [Gamma(n+alpha+1)/n!] x_k / ((n+1)^2 [L_{n+1}^{(alpha)}(x_k)]^2)
    let mut gratio = crate::sfkernel::gamma::gamma_raw(alpha + 1.0)?;
    for j in 1..=n {
        gratio *= (alpha + j as f64) / j as f64;
    }
    let np1 = (n + 1) as f64;
    let weights: Vec<f64> = roots
        .iter()
        .map(|&x| {
            let (lnp1, _) = laguerre_poly(n + 1, alpha, x);
            gratio * x / (np1 * np1 * lnp1 * lnp1)
        })
        .collect();
    let rule = Arc::new(QuadRule {
        nodes: roots,
        weights,
    });
    cache().lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}
