use serde::Serialize;

use super::solve::{resolve, solve_aes_su11, Su11Label};
use super::{adaptive, check_rep, SpectrumClass, Su11State, Su11Weight, DEFAULT_TRUNCATION};
use crate::specfun::{bessel_i_entire, confluent_phi, ln_factorial, ln_gamma_int};
use crate::{C64, HalfInt, Result, StateVector};

/// Eigenstate `|k,z⟩` of `K₋` in the `|k,n⟩` basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BgState {
    pub k: HalfInt,
    pub z: C64,
    pub state: Su11State,
}

/// `|k,z⟩ = (√z/|√z|)^{2k-1} Σ zⁿ/√(n!Γ(2k+n)) |k,n⟩ / √E(|z|²)`, with
/// `E(w) = Σ wᵐ/(m!Γ(2k+m))`, i.e. `|z|^{2k-1}E(|z|²) = I_{2k-1}(2|z|)`.
///
/// The phase is kept (not normalized away) so that [`bg_overlap`] is the
/// inner product of these vectors.
pub fn bg_state(k: HalfInt, z: C64, dim: usize) -> Result<BgState> {
    check_rep(k)?;
    let nu = k.twice() as u32 - 1;
    let e = bessel_i_entire(nu, C64::new(z.norm_sqr(), 0.0)).re;
    let phase = if z.norm() > 0.0 {
        let s = z.sqrt();
        (s / s.norm()).powu(nu)
    } else {
        C64::new(1.0, 0.0)
    };
    let c0 = phase * (-0.5 * ln_gamma_int(k.twice() as usize)).exp() / e.sqrt();
    let two_k = k.twice() as f64;
    let (amps, tail) = adaptive(dim, |n| {
        let mut out = Vec::with_capacity(n);
        let mut c = c0;
        for m in 0..n {
            out.push(c);
            let mf = m as f64;
            c = c * z / ((mf + 1.0) * (two_k + mf)).sqrt();
        }
        Ok(out)
    })?;
    Ok(BgState { k, z, state: Su11State { k, amplitudes: StateVector::new(amps), tail_bound: tail } })
}

/// `⟨k,z₁|k,z₂⟩ = I_{2k-1}(2s) / √(I_{2k-1}(2|z₁|) I_{2k-1}(2|z₂|))`,
/// `s = (√z₁)* √z₂`.
pub fn bg_overlap(k: HalfInt, z1: C64, z2: C64) -> C64 {
    let nu = k.twice() as u32 - 1;
    let e12 = bessel_i_entire(nu, z1.conj() * z2);
    let e1 = bessel_i_entire(nu, C64::new(z1.norm_sqr(), 0.0)).re;
    let e2 = bessel_i_entire(nu, C64::new(z2.norm_sqr(), 0.0)).re;
    let unit = |z: C64| {
        if z.norm() > 0.0 {
            let s = z.sqrt();
            s / s.norm()
        } else {
            C64::new(1.0, 0.0)
        }
    };
    (unit(z1).conj() * unit(z2)).powu(nu) * e12 / (e1 * e2).sqrt()
}

/// Sign choice of the two Kummer solutions of the BG-representation ODE.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KummerBranch {
    /// `e^{-τ₊z} Φ(k-r; 2k; κz)`
    Upper,
    /// `e^{-τ₋z} Φ(k+r; 2k; -κz)`
    Lower,
}

/// `Λ(z) = Σ c_n zⁿ/√(n!Γ(2k+n))` for the normalized eigenstate returned
/// by [`solve_aes_su11`], from the closed solutions of the ODE.
pub fn bg_rep_eval(k: HalfInt, w: &Su11Weight, label: Su11Label, z: C64) -> Result<C64> {
    bg_rep_eval_branch(k, w, label, z, KummerBranch::Upper)
}

/// As [`bg_rep_eval`] with an explicit Kummer branch; the branch only
/// matters where `β₊ ≠ 0` and `b ≠ 0`.
pub fn bg_rep_eval_branch(k: HalfInt, w: &Su11Weight, label: Su11Label, z: C64, branch: KummerBranch) -> Result<C64> {
    let res = resolve(k, w, label)?;
    let norm = solve_aes_su11(k, w, label, DEFAULT_TRUNCATION)?.norm_factor.sqrt();
    let two_k = k.twice() as usize;
    let kv = C64::new(k.value(), 0.0);
    let lambda = match res.class {
        SpectrumClass::ContinuousSU11 | SpectrumClass::DiscretePositive | SpectrumClass::DiscreteNegative => {
            let (tp, tm, r) = (w.tau_plus.unwrap(), w.tau_minus.unwrap(), res.r.unwrap());
            let kappa = tp - tm;
            let c2k = C64::new(2.0 * k.value(), 0.0);
            let v = match branch {
                KummerBranch::Upper => (-tp * z).exp() * confluent_phi(kv - r, c2k, kappa * z)?,
                KummerBranch::Lower => (-tm * z).exp() * confluent_phi(kv + r, c2k, -kappa * z)?,
            };
            v * (-0.5 * ln_gamma_int(two_k)).exp()
        }
        SpectrumClass::BoundarySpecialCase => {
            let l = res.l.unwrap();
            let tau = w.beta_minus / w.beta3;
            let pre = (-0.5 * (ln_factorial(l) + ln_gamma_int(two_k + l))).exp();
            z.powu(l as u32) * (-tau * z).exp() * pre
        }
        SpectrumClass::DegenerateContinuous => {
            let lambda_p = res.lambda / w.beta_plus;
            let tau = w.tau_degenerate().unwrap();
            bessel_i_entire(two_k as u32 - 1, lambda_p * z) * (-tau * z).exp()
        }
        _ => unreachable!("resolve rejects inadmissible classes"),
    };
    Ok(lambda / norm)
}

/// `Σ c_n zⁿ/√(n!Γ(2k+n))` summed over the amplitudes of `state`.
pub fn bg_rep_series(state: &Su11State, z: C64) -> C64 {
    let two_k = state.k.twice() as f64;
    let mut wn = C64::new((-0.5 * ln_gamma_int(state.k.twice() as usize)).exp(), 0.0);
    let mut sum = C64::new(0.0, 0.0);
    for (n, c) in state.amplitudes.iter().enumerate() {
        sum += c * wn;
        let nf = n as f64;
        wn = wn * z / ((nf + 1.0) * (two_k + nf)).sqrt();
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{eigen_residual, truncated_su11_ladders};
    use crate::su11::{intelligent_weight_su11, Su11Family};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn zero_is_ground_state() {
        let s = bg_state(h(3), c(0.0, 0.0), 32).unwrap();
        assert!((s.state.amplitudes[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((s.state.amplitudes.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lowering_eigenvector() {
        for twice in 1..=4 {
            for z in [c(2.0, 0.0), c(-1.5, 3.2), c(0.0, -5.0)] {
                let s = bg_state(h(twice), z, 64).unwrap();
                assert!((s.state.amplitudes.norm_sqr() - 1.0).abs() < 1e-12);
                let (_, km, _) = truncated_su11_ladders(h(twice), s.state.truncation());
                assert!(eigen_residual(&km, z, &s.state.amplitudes) < 1e-10);
            }
        }
    }

    #[test]
    fn overlap_matches_inner_product() {
        let zs = [c(0.0, 0.0), c(1.0, 0.5), c(-3.0, 2.0), c(4.0, -2.9), c(-0.2, -4.9)];
        for twice in 1..=4 {
            for &z1 in &zs {
                for &z2 in &zs {
                    let a = bg_state(h(twice), z1, 64).unwrap();
                    let b = bg_state(h(twice), z2, 64).unwrap();
                    let direct = a.state.amplitudes.inner(&b.state.amplitudes);
                    assert!((bg_overlap(h(twice), z1, z2) - direct).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn series_matches_closed_forms_and_branches() {
        let z0 = c(0.3, -0.5);
        let degenerate = Su11Weight::new(c(1.0, 0.0) + z0 * z0, c(0.0, -1.0) * (c(1.0, 0.0) - z0 * z0), -z0 * 2.0);
        let cases: Vec<(Su11Weight, Su11Label)> = vec![
            (Su11Weight::real([1.0, 0.0, 2.0]), Su11Label::L(2)),
            (Su11Weight::from_taus(c(1.6, 0.4), c(-0.5, 0.2)), Su11Label::L(1)),
            (Su11Weight::from_taus(c(0.3, 0.4), c(-0.5, 0.2)), Su11Label::Lambda(c(0.7, -0.3))),
            (Su11Weight::new(c(0.6, 0.0), c(0.0, 0.6), c(1.5, 0.2)), Su11Label::L(2)),
            (Su11Weight::new(c(1.0, 0.0), c(0.0, -1.0), c(0.0, 0.0)), Su11Label::Lambda(c(1.2, -0.7))),
            (degenerate, Su11Label::Lambda(c(0.4, 0.2))),
        ];
        for (w, label) in cases {
            let sol = solve_aes_su11(h(3), &w, label, 256).unwrap();
            for z in [c(0.5, 0.0), c(-1.2, 0.8), c(0.3, -1.9)] {
                let series = bg_rep_series(&sol.state, z);
                let up = bg_rep_eval_branch(h(3), &w, label, z, KummerBranch::Upper).unwrap();
                let lo = bg_rep_eval_branch(h(3), &w, label, z, KummerBranch::Lower).unwrap();
                assert!((series - up).norm() < 1e-9 * (1.0 + series.norm()), "{:?}: {series} vs {up}", sol.class);
                assert!((up - lo).norm() < 1e-10 * (1.0 + up.norm()));
            }
        }
    }

    #[test]
    fn generalized_is_at_eta_one_is_bg() {
        let (w, _) = intelligent_weight_su11(Su11Family::Generalized(c(1.0, 0.0)));
        // (1, -i, 0)·K⃗ = K₋
        let z = c(0.8, -1.1);
        let sol = solve_aes_su11(h(2), &w, Su11Label::Lambda(z), 64).unwrap();
        let bg = bg_state(h(2), z, sol.state.truncation()).unwrap();
        assert!(sol.state.amplitudes.fidelity(&bg.state.amplitudes) > 1.0 - 1e-12);
    }
}
