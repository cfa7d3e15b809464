use serde::Serialize;

use super::{adaptive, check_rep, classify_with_reason, SpectrumClass, Su11State, Su11Weight};
use crate::specfun::{bessel_i_entire, gauss_2f1, jacobi_p, lagrange_coeffs, ln_factorial, ln_gamma_int};
use crate::{C64, Error, HalfInt, Result, StateVector};

/// Eigenvalue label: `l` in the discrete classes, `λ` in the continuous
/// and degenerate ones.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Su11Label {
    L(usize),
    Lambda(C64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Su11AesSolution {
    pub weight: Su11Weight,
    pub class: SpectrumClass,
    /// `r = λ/b`; `None` when `b = 0`.
    pub r: Option<C64>,
    pub l: Option<usize>,
    pub lambda: C64,
    /// `𝒩`, the squared norm of the unnormalized closed-form expansion.
    pub norm_factor: f64,
    pub state: Su11State,
}

/// A label checked against the class of its weight.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Resolved {
    pub class: SpectrumClass,
    pub r: Option<C64>,
    pub l: Option<usize>,
    pub lambda: C64,
}

const LABEL_TOL: f64 = 1e-9;

pub(crate) fn resolve(k: HalfInt, w: &Su11Weight, label: Su11Label) -> Result<Resolved> {
    check_rep(k)?;
    let (class, reason) = classify_with_reason(w)?;
    let kv = k.value();
    match class {
        SpectrumClass::Forbidden => Err(Error::ForbiddenRegion(reason.unwrap_or_default())),
        SpectrumClass::DegenerateNoEigenstate => Err(Error::NoEigenstate(reason.unwrap_or_default())),
        SpectrumClass::ContinuousSU11 => match label {
            Su11Label::Lambda(lambda) => Ok(Resolved { class, r: Some(lambda / w.b), l: None, lambda }),
            Su11Label::L(_) => Err(Error::ClassMismatch("continuous class takes a complex eigenvalue λ".into())),
        },
        SpectrumClass::DegenerateContinuous => match label {
            Su11Label::Lambda(lambda) => Ok(Resolved { class, r: None, l: None, lambda }),
            Su11Label::L(_) => Err(Error::ClassMismatch("b = 0 class takes a complex eigenvalue λ".into())),
        },
        SpectrumClass::DiscretePositive | SpectrumClass::DiscreteNegative | SpectrumClass::BoundarySpecialCase => {
            // λ = sign·(k+l)·b, with sign fixed by the class (for β₊ = 0, by b = ±β₃)
            let sign = match class {
                SpectrumClass::DiscretePositive => 1.0,
                SpectrumClass::DiscreteNegative => -1.0,
                _ => {
                    if (w.b - w.beta3).norm() <= (w.b + w.beta3).norm() {
                        1.0
                    } else {
                        -1.0
                    }
                }
            };
            let l = match label {
                Su11Label::L(l) => l,
                Su11Label::Lambda(lambda) => {
                    let r = lambda / w.b * sign - kv;
                    let l = r.re.round();
                    if (r - C64::new(l, 0.0)).norm() > LABEL_TOL * (1.0 + r.norm()) || l < 0.0 {
                        return Err(Error::ClassMismatch(format!(
                            "λ/b = {} is not ±(k+l) with l = 0, 1, 2, …",
                            lambda / w.b
                        )));
                    }
                    l as usize
                }
            };
            let r = C64::new(sign * (kv + l as f64), 0.0);
            Ok(Resolved { class, r: Some(r), l: Some(l), lambda: r * w.b })
        }
    }
}

/// Unnormalized amplitudes `c_n = √(n!Γ(2k)/Γ(2k+n)) g_n`, `n < dim`,
/// where `g_n` are the coefficients of `(1+τ₋ζ)^{-k+r} (1+τ₊ζ)^{-k-r}`,
/// i.e. `(-κ)ⁿ Pₙ^{(-k+r-n,-k-r-n)}(x)`.
///
/// No admissibility check: in the forbidden region this exposes the
/// divergent growth of the expansion.
pub fn expansion_coefficients(k: HalfInt, tau_plus: C64, tau_minus: C64, r: C64, dim: usize) -> Vec<C64> {
    let kv = C64::new(k.value(), 0.0);
    let g = lagrange_coeffs(kv - r, kv + r, -tau_minus, -tau_plus, dim.saturating_sub(1));
    let two_k = k.twice() as f64;
    let mut f = 1.0;
    g.into_iter()
        .enumerate()
        .map(|(n, gn)| {
            let c = gn * f;
            f *= ((n as f64 + 1.0) / (two_k + n as f64)).sqrt();
            c
        })
        .collect()
}

/// `β₊ = 0`: `c_n = √(n!Γ(2k+n)/(l!Γ(2k+l))) (-τ)^{n-l}/(n-l)!` for `n ≥ l`.
fn boundary_amplitudes(k: HalfInt, l: usize, tau: C64, dim: usize) -> Vec<C64> {
    let two_k = k.twice() as f64;
    let mut out = vec![C64::new(0.0, 0.0); dim];
    let mut c = C64::new(1.0, 0.0);
    for (n, slot) in out.iter_mut().enumerate().skip(l) {
        *slot = c;
        let nf = n as f64;
        c = c * (-tau) * ((nf + 1.0) * (two_k + nf)).sqrt() / (nf + 1.0 - l as f64);
    }
    out
}

/// `b = 0`: `c_n = √(n!/Γ(2k+n)) L_n^{2k-1}(λ'/τ) (-τ)ⁿ`, `λ' = λ/β₊`.
///
/// `Mₙ = Lₙ(λ'/τ)(-τ)ⁿ` obeys the Laguerre recurrence rescaled by `(-τ)ⁿ`,
/// `(m+1)M_{m+1} = (λ' - (2m+2k)τ) M_m - (m+2k-1) τ² M_{m-1}`,
/// which stays finite at `τ = 0` (pure `K₋`).
fn degenerate_amplitudes(k: HalfInt, lambda_p: C64, tau: C64, dim: usize) -> Vec<C64> {
    let two_k = k.twice() as f64;
    let alpha = two_k - 1.0;
    let mut out = Vec::with_capacity(dim);
    let mut scale = (-0.5 * ln_gamma_int(k.twice() as usize)).exp();
    let (mut prev, mut cur) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    for m in 0..dim {
        out.push(cur * scale);
        let mf = m as f64;
        let next = ((lambda_p - tau * (2.0 * mf + alpha + 1.0)) * cur - tau * tau * (mf + alpha) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
        scale *= ((mf + 1.0) / (two_k + mf)).sqrt();
    }
    out
}

fn raw_amplitudes(k: HalfInt, w: &Su11Weight, res: &Resolved, dim: usize) -> Vec<C64> {
    match res.class {
        SpectrumClass::ContinuousSU11 | SpectrumClass::DiscretePositive | SpectrumClass::DiscreteNegative => {
            expansion_coefficients(k, w.tau_plus.unwrap(), w.tau_minus.unwrap(), res.r.unwrap(), dim)
        }
        SpectrumClass::BoundarySpecialCase => boundary_amplitudes(k, res.l.unwrap(), w.beta_minus / w.beta3, dim),
        SpectrumClass::DegenerateContinuous => {
            degenerate_amplitudes(k, res.lambda / w.beta_plus, w.tau_degenerate().unwrap(), dim)
        }
        _ => unreachable!("resolve rejects inadmissible classes"),
    }
}

/// Eigenstate of `β⃗·K⃗`, truncated adaptively from `dim` basis states
/// until the tail estimate is below `1e-10`.
pub fn solve_aes_su11(k: HalfInt, w: &Su11Weight, label: Su11Label, dim: usize) -> Result<Su11AesSolution> {
    let res = resolve(k, w, label)?;
    let (raw, tail) = adaptive(dim, |n| Ok(raw_amplitudes(k, w, &res, n)))?;
    let direct = StateVector::new(raw.clone()).norm_sqr();
    let norm_factor = match closed_normalization(k, w, &res) {
        Ok(nf) => nf,
        Err(Error::BranchUnavailable(_)) => direct * (1.0 + tail),
        Err(e) => return Err(e),
    };
    let state = Su11State { k, amplitudes: StateVector::new(raw).normalized(), tail_bound: tail };
    Ok(Su11AesSolution { weight: *w, class: res.class, r: res.r, l: res.l, lambda: res.lambda, norm_factor, state })
}

/// Closed-form `𝒩` for every admissible case except a continuous-class
/// eigenvalue with complex `r`.
///
/// - continuous, real `r`: `S₊^{-k+r} S₋^{-k-r} ₂F₁(k+r, k-r; 2k; -t/(S₊S₋))`
/// - `r = k+l`: `l!Γ(2k)/Γ(2k+l) S₊^l S₋^{-2k-l} P_l^{(2k-1,0)}(1+2t/(S₊S₋))`,
///   with `S₊ ↔ S₋` for `r = -(k+l)`
/// - `β₊ = 0`: `(1-h)^{-2k-l} P_l^{(0,2k-1)}((1+h)/(1-h))`, `h = |β₋/β₃|²`
/// - `b = 0`: `(1-h)^{-2k} I_{2k-1}`-type entire function of
///   `|λ'|²/(1-h)²` times `exp(-2 Re(λ'τ*)/(1-h))`
pub fn normalization_su11(k: HalfInt, w: &Su11Weight, label: Su11Label) -> Result<f64> {
    let res = resolve(k, w, label)?;
    closed_normalization(k, w, &res)
}

fn closed_normalization(k: HalfInt, w: &Su11Weight, res: &Resolved) -> Result<f64> {
    let kv = k.value();
    let two_k = k.twice() as usize;
    match res.class {
        SpectrumClass::ContinuousSU11 => {
            let r = res.r.unwrap();
            if r.im.abs() > 1e-14 * (1.0 + r.re.abs()) {
                return Err(Error::BranchUnavailable(
                    "the ₂F₁ closed form of 𝒩 holds for real r only".into(),
                ));
            }
            let r = r.re;
            let (sp, sm, t) = (w.s_plus().unwrap(), w.s_minus().unwrap(), w.t().unwrap());
            let f = gauss_2f1(
                C64::new(kv + r, 0.0),
                C64::new(kv - r, 0.0),
                C64::new(2.0 * kv, 0.0),
                C64::new(-t / (sp * sm), 0.0),
            )?;
            Ok(sp.powf(-kv + r) * sm.powf(-kv - r) * f.re)
        }
        SpectrumClass::DiscretePositive | SpectrumClass::DiscreteNegative => {
            let l = res.l.unwrap();
            let (sp, sm, t) = (w.s_plus().unwrap(), w.s_minus().unwrap(), w.t().unwrap());
            let (si, sj) = if res.class == SpectrumClass::DiscretePositive { (sp, sm) } else { (sm, sp) };
            let ln_pre = ln_factorial(l) + ln_gamma_int(two_k) - ln_gamma_int(two_k + l);
            let p = jacobi_p(l, C64::new(2.0 * kv - 1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0 + 2.0 * t / (sp * sm), 0.0));
            Ok(ln_pre.exp() * si.powi(l as i32) * sj.powf(-2.0 * kv - l as f64) * p.re)
        }
        SpectrumClass::BoundarySpecialCase => {
            let l = res.l.unwrap();
            let h = (w.beta_minus / w.beta3).norm_sqr();
            let p = jacobi_p(l, C64::new(0.0, 0.0), C64::new(2.0 * kv - 1.0, 0.0), C64::new((1.0 + h) / (1.0 - h), 0.0));
            Ok((1.0 - h).powf(-2.0 * kv - l as f64) * p.re)
        }
        SpectrumClass::DegenerateContinuous => {
            let lambda_p = res.lambda / w.beta_plus;
            let tau = w.tau_degenerate().unwrap();
            let q = 1.0 - tau.norm_sqr();
            let y2 = lambda_p.norm_sqr() / (q * q);
            let e = bessel_i_entire(two_k as u32 - 1, C64::new(y2, 0.0)).re;
            Ok(q.powf(-2.0 * kv) * e * (-2.0 * (lambda_p * tau.conj()).re / q).exp())
        }
        _ => unreachable!("resolve rejects inadmissible classes"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::eigen_residual;
    use crate::su11::{coherent_state_su11, intelligent_weight_su11, Su11Family};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn residual(k: HalfInt, sol: &Su11AesSolution) -> f64 {
        let m = sol.weight.matrix(k, sol.state.truncation());
        eigen_residual(&m, sol.lambda, &sol.state.amplitudes)
    }

    #[test]
    fn k3_eigenbasis() {
        let w = Su11Weight::real([0.0, 0.0, 1.0]);
        for l in 0..5 {
            let sol = solve_aes_su11(h(3), &w, Su11Label::L(l), 64).unwrap();
            assert!((sol.lambda - c(1.5 + l as f64, 0.0)).norm() < 1e-15);
            assert!((sol.state.amplitudes[l] - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn hyperboloid_weight_gives_coherent_state() {
        let (chi, phi) = (1.0f64, 0.4f64);
        let w = Su11Weight::real([chi.sinh() * phi.cos(), chi.sinh() * phi.sin(), chi.cosh()]);
        let k = h(1);
        let sol = solve_aes_su11(k, &w, Su11Label::L(0), 256).unwrap();
        assert_eq!(sol.class, SpectrumClass::DiscretePositive);
        assert!((sol.lambda - c(0.5, 0.0)).norm() < 1e-14);
        let zeta0 = -(chi / 2.0).tanh() * c(0.0, -phi).exp();
        let cs = coherent_state_su11(k, zeta0, sol.state.truncation()).unwrap();
        assert!(sol.state.amplitudes.fidelity(&cs.amplitudes) > 1.0 - 1e-12);
        let want = (1.0 - zeta0.norm_sqr()).powf(-1.0);
        assert!((sol.norm_factor - want).abs() < 1e-12 * want);
    }

    #[test]
    fn residuals_across_classes() {
        let cases: Vec<(Su11Weight, Su11Label)> = vec![
            (Su11Weight::real([1.0, 0.0, 2.0]), Su11Label::L(1)),
            (Su11Weight::real([1.0, 0.0, -2.0]), Su11Label::L(2)),
            (Su11Weight::from_taus(c(0.3, 0.4), c(-0.5, 0.2)), Su11Label::Lambda(c(0.7, -0.3))),
            (Su11Weight::from_taus(c(0.3, 0.4), c(-0.5, 0.2)), Su11Label::Lambda(c(1.3, 0.0))),
            (Su11Weight::from_taus(c(1.6, 0.4), c(-0.5, 0.2)), Su11Label::L(3)),
            (Su11Weight::new(c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.3)), Su11Label::L(2)), // β₊ = 0
            (Su11Weight::new(c(1.0, 0.0), c(0.0, -1.0), c(0.0, 0.0)), Su11Label::Lambda(c(1.2, -0.7))), // pure K₋
        ];
        for (w, label) in cases {
            for twice in 1..=4 {
                let sol = solve_aes_su11(h(twice), &w, label, 128).unwrap();
                let r = residual(h(twice), &sol);
                assert!(r < 1e-8, "{:?} {label:?} k={} residual {r}", sol.class, h(twice));
                assert!(sol.state.tail_bound < 1e-10);
            }
        }
    }

    #[test]
    fn degenerate_case_with_laguerre() {
        // b = 0 weight (1+ζ₀², -i(1-ζ₀²), -2ζ₀), τ = -ζ₀ ... any λ
        let z0 = c(0.3, -0.5);
        let i = c(0.0, 1.0);
        let one = c(1.0, 0.0);
        let w = Su11Weight::new(one + z0 * z0, -i * (one - z0 * z0), -z0 * 2.0);
        assert_eq!(super::super::classify(&w).unwrap(), SpectrumClass::DegenerateContinuous);
        for lambda in [c(0.0, 0.0), c(0.8, 0.3), c(-1.5, 2.0)] {
            let sol = solve_aes_su11(h(3), &w, Su11Label::Lambda(lambda), 128).unwrap();
            assert!(residual(h(3), &sol) < 1e-8);
            let raw: Vec<C64> = degenerate_amplitudes(h(3), lambda / w.beta_plus, w.tau_degenerate().unwrap(), sol.state.truncation());
            let direct = StateVector::new(raw).norm_sqr();
            assert!((sol.norm_factor - direct).abs() < 1e-12 * direct, "{} vs {direct}", sol.norm_factor);
        }
        // λ = 0 is the coherent state |k,ζ₀⟩
        let sol = solve_aes_su11(h(3), &w, Su11Label::Lambda(c(0.0, 0.0)), 128).unwrap();
        let cs = coherent_state_su11(h(3), z0, sol.state.truncation()).unwrap();
        assert!(sol.state.amplitudes.fidelity(&cs.amplitudes) > 1.0 - 1e-12);
    }

    #[test]
    fn closed_normalizations_match_direct_sums() {
        let cases: Vec<(Su11Weight, Su11Label)> = vec![
            (Su11Weight::real([1.0, 0.0, 2.0]), Su11Label::L(0)),
            (Su11Weight::real([1.0, 0.0, 2.0]), Su11Label::L(3)),
            (Su11Weight::from_taus(c(1.6, 0.4), c(-0.5, 0.2)), Su11Label::L(2)),
            (Su11Weight::from_taus(c(0.3, 0.4), c(-0.5, 0.2)), Su11Label::Lambda(c(0.35, 0.0))),
            (Su11Weight::from_taus(c(0.7, -0.1), c(0.2, 0.6)), Su11Label::Lambda(c(-1.7, 0.0))),
            (Su11Weight::new(c(0.6, 0.0), c(0.0, 0.6), c(1.5, 0.2)), Su11Label::L(2)),
        ];
        for (w, label) in cases {
            for twice in 1..=4 {
                let k = h(twice);
                let res = resolve(k, &w, label).unwrap();
                let (raw, _) = adaptive(256, |n| Ok(raw_amplitudes(k, &w, &res, n))).unwrap();
                let direct = StateVector::new(raw).norm_sqr();
                let nf = normalization_su11(k, &w, label).unwrap();
                assert!((nf - direct).abs() < 1e-9 * direct, "{:?} {label:?} k={k}: {nf} vs {direct}", res.class);
            }
        }
    }

    #[test]
    fn complex_r_has_no_closed_form() {
        let w = Su11Weight::from_taus(c(0.3, 0.4), c(-0.5, 0.2));
        let label = Su11Label::Lambda(c(0.7, -0.3));
        assert!(matches!(normalization_su11(h(2), &w, label), Err(Error::BranchUnavailable(_))));
        let sol = solve_aes_su11(h(2), &w, label, 128).unwrap();
        assert!(sol.norm_factor > 0.0);
    }

    #[test]
    fn label_and_class_errors() {
        let forbidden = Su11Weight::from_taus(c(1.3, 0.0), c(0.0, -1.5));
        assert!(matches!(solve_aes_su11(h(1), &forbidden, Su11Label::L(0), 64), Err(Error::ForbiddenRegion(_))));
        let (kplus, _) = intelligent_weight_su11(Su11Family::K1K2(1.0));
        assert!(matches!(solve_aes_su11(h(1), &kplus, Su11Label::Lambda(c(1.0, 0.0)), 64), Err(Error::NoEigenstate(_))));
        let disc = Su11Weight::real([1.0, 0.0, 2.0]);
        let b = disc.b;
        assert!(matches!(
            solve_aes_su11(h(1), &disc, Su11Label::Lambda(b * 0.87), 64),
            Err(Error::ClassMismatch(_))
        ));
        let ok = solve_aes_su11(h(1), &disc, Su11Label::Lambda(b * 2.5), 64).unwrap();
        assert_eq!(ok.l, Some(2));
        let cont = Su11Weight::from_taus(c(0.3, 0.4), c(-0.5, 0.2));
        assert!(matches!(solve_aes_su11(h(1), &cont, Su11Label::L(0), 64), Err(Error::ClassMismatch(_))));
    }
}
