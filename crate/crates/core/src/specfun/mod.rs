//! Special-function kernels.
//!
//! Jacobi polynomials are defined by their finite double sum (equivalently
//! by the generating function `(1-uζ)^μ (1-vζ)^ν`), never by hypergeometric
//! reduction, so negative integer parameters such as `(m₀-m-n, -m₀-m-n)`
//! are handled exactly. Generalized binomials are falling-factorial
//! products; an integer upper argument produces exact zeros.

mod bessel;
mod hypergeometric;

pub use bessel::{bessel_i, bessel_i_entire};
pub use hypergeometric::{confluent_phi, gauss_2f1};

use std::sync::OnceLock;

use crate::C64;

/// Relative magnitude at which a series term counts as negligible.
pub const SERIES_REL_TOL: f64 = 1e-16;

/// Hard cap on the number of series terms.
pub const SERIES_MAX_TERMS: usize = 1_000_000;

const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Generalized binomial `C(a, s) = a(a-1)...(a-s+1)/s!`.
pub fn binom(a: C64, s: usize) -> C64 {
    let mut acc = ONE;
    for i in 0..s {
        acc = acc * (a - i as f64) / (i + 1) as f64;
    }
    acc
}

/// Pochhammer symbol `(a)_n = a(a+1)...(a+n-1)`.
pub fn rising(a: C64, n: usize) -> C64 {
    (0..n).fold(ONE, |acc, i| acc * (a + i as f64))
}

/// Sequence `C(a, s) w^s` for `s = 0..=s_max`, cut at the first exact zero
/// (every later term vanishes too when `a` is a non-negative integer).
fn binomial_powers(a: C64, w: C64, s_max: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(s_max + 1);
    let mut term = ONE;
    out.push(term);
    for s in 0..s_max {
        let factor = a - s as f64;
        if factor == ZERO {
            break;
        }
        term = term * factor * w / (s + 1) as f64;
        out.push(term);
    }
    out
}

/// Jacobi polynomial `P_n^{(α,β)}(x)` from the finite double sum
/// `Σ_s C(n+α, s) C(n+β, n-s) ((x-1)/2)^{n-s} ((x+1)/2)^s`.
pub fn jacobi_p(n: usize, alpha: C64, beta: C64, x: C64) -> C64 {
    let lower = (x - 1.0) / 2.0;
    let upper = (x + 1.0) / 2.0;
    let a = binomial_powers(alpha + n as f64, upper, n);
    let b = binomial_powers(beta + n as f64, lower, n);
    convolve_at(&a, &b, n)
}

/// Coefficients of the Jacobi generating function
///
/// `Σ_n scale^n P_n^{(μ-n, ν-n)}(x) ζ^n`, for `n = 0..=n_max`.
///
/// `scale^n` is folded into the two factors `scale (x∓1)/2` term by term,
/// so large `|x|` with small `|scale|` neither overflows nor underflows.
pub fn jacobi_generating_coeffs(mu: C64, nu: C64, x: C64, scale: C64, n_max: usize) -> Vec<C64> {
    let lower = scale * (x - 1.0) / 2.0;
    let upper = scale * (x + 1.0) / 2.0;
    lagrange_coeffs(-mu, -nu, -upper, -lower, n_max)
}

/// `g_0, ..., g_{n_max}`: the coefficients of `(1-uζ)^{-α} (1-vζ)^{-β}`.
///
/// Both group expansions feed `τ±` in here directly, which keeps the
/// β₊ → 0 and β₋ → 0 limits finite.
pub fn lagrange_coeffs(alpha: C64, beta: C64, u: C64, v: C64, n_max: usize) -> Vec<C64> {
    let a = binomial_powers(-alpha, -u, n_max);
    let b = binomial_powers(-beta, -v, n_max);
    (0..=n_max).map(|n| convolve_at(&a, &b, n)).collect()
}

fn convolve_at(a: &[C64], b: &[C64], n: usize) -> C64 {
    let lo = n.saturating_sub(b.len().saturating_sub(1));
    let hi = n.min(a.len().saturating_sub(1));
    if lo > hi {
        return ZERO;
    }
    (lo..=hi).map(|s| a[s] * b[n - s]).sum()
}

/// Lagrange polynomial `g_n^{(α,β)}(u,v)`, the coefficient of `ζ^n` in
/// `(1-uζ)^{-α} (1-vζ)^{-β}`.
///
/// Evaluated as `(v-u)^n P_n^{(-α-n,-β-n)}((u+v)/(u-v))`; when `u` and `v`
/// coincide the limit `Σ_s (α)_s/s! (β)_{n-s}/(n-s)! u^n` is used instead.
pub fn lagrange_g(n: usize, alpha: C64, beta: C64, u: C64, v: C64) -> C64 {
    let scale = u.norm().max(v.norm());
    if scale == 0.0 {
        return if n == 0 { ONE } else { ZERO };
    }
    if (u - v).norm() <= 1e-13 * scale {
        let w = (u + v) / 2.0;
        let mut acc = ZERO;
        for s in 0..=n {
            let left = rising(alpha, s) / factorial(s);
            let right = rising(beta, n - s) / factorial(n - s);
            acc += left * right;
        }
        return acc * w.powu(n as u32);
    }
    let x = (u + v) / (u - v);
    (v - u).powu(n as u32) * jacobi_p(n, -alpha - n as f64, -beta - n as f64, x)
}

/// Generalized Laguerre polynomial from the explicit sum
/// `Σ_s (-1)^s C(n+α, n-s) x^s / s!`.
pub fn laguerre_l(n: usize, alpha: C64, x: C64) -> C64 {
    let top = alpha + n as f64;
    let mut acc = ZERO;
    let mut xs = ONE;
    for s in 0..=n {
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        acc += binom(top, n - s) * xs * sign;
        xs = xs * x / (s + 1) as f64;
    }
    acc
}

/// `L_0^α(x), ..., L_{n_max}^α(x)` by the three-term recurrence
/// `(m+1) L_{m+1} = (2m+1+α-x) L_m - (m+α) L_{m-1}`.
///
/// Avoids the cancellation of the explicit alternating sum at large `n`.
pub fn laguerre_sequence(n_max: usize, alpha: C64, x: C64) -> Vec<C64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(ONE);
    if n_max == 0 {
        return out;
    }
    out.push(alpha + 1.0 - x);
    for m in 1..n_max {
        let mf = m as f64;
        let next = ((alpha + (2.0 * mf + 1.0) - x) * out[m] - (alpha + mf) * out[m - 1]) / (mf + 1.0);
        out.push(next);
    }
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// `ln(n!)`; exact table up to 170, Stirling series beyond.
pub fn ln_factorial(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(171);
        let mut f = 1.0f64;
        t.push(0.0);
        for i in 1..=170 {
            f *= i as f64;
            t.push(f.ln());
        }
        t
    });
    if n <= 170 {
        return table[n];
    }
    let x = n as f64 + 1.0;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// `ln Γ(m)` for positive integers `m`.
pub fn ln_gamma_int(m: usize) -> f64 {
    assert!(m >= 1, "Γ has poles at non-positive integers");
    ln_factorial(m - 1)
}
