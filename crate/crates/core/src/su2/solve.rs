use serde::Serialize;

use super::{check_rep, coherent_state, ln_sqrt_binomial, Su2State, Su2Weight};
use crate::specfun::{jacobi_p, lagrange_coeffs, ln_factorial};
use crate::{C64, Error, HalfInt, Result, StateVector};

/// Which closed form applies to a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Su2Case {
    /// `b ≠ 0`, `β₊ ≠ 0`: Jacobi expansion.
    General,
    /// `β₊ = 0`, `β₃ ≠ 0`: only `J₊` and `J₃` act.
    BetaPlusZero,
    /// `b = 0`, `β₃ ≠ 0`: a coherent state with `λ = 0`.
    DegenerateCoherent,
    /// `b = β₃ = β₋ = 0`: pure `J₋`, kills `|j,-j⟩`.
    LowestWeight,
    /// `b = β₃ = β₊ = 0`: pure `J₊`, kills `|j,j⟩`.
    HighestWeight,
}

impl Su2Case {
    pub fn of(w: &Su2Weight) -> Result<Self> {
        if w.scale() == 0.0 {
            return Err(Error::ZeroWeight);
        }
        Ok(if w.b_is_zero() {
            if !w.is_negligible(w.beta3) {
                Su2Case::DegenerateCoherent
            } else if w.is_negligible(w.beta_minus) {
                Su2Case::LowestWeight
            } else {
                Su2Case::HighestWeight
            }
        } else if w.is_negligible(w.beta_plus) {
            Su2Case::BetaPlusZero
        } else {
            Su2Case::General
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Su2AesSolution {
    pub weight: Su2Weight,
    pub case: Su2Case,
    /// `None` when `b = 0` and the only eigenvalue is zero.
    pub m0: Option<HalfInt>,
    pub lambda: C64,
    /// `𝒩`, the squared norm of the unnormalized closed-form expansion.
    pub norm_factor: f64,
    pub state: Su2State,
}

fn check_m0(j: HalfInt, m0: HalfInt) -> Result<()> {
    if m0.abs() > j || m0.int_diff(j).is_none() {
        return Err(Error::InvalidQuantumNumber { j: j.to_string(), m0: m0.to_string() });
    }
    Ok(())
}

/// Eigenvalues `{m₀b}`, or `{0}` when `b = 0`.
pub fn spectrum(j: HalfInt, w: &Su2Weight) -> Result<Vec<C64>> {
    check_rep(j)?;
    match Su2Case::of(w)? {
        Su2Case::General | Su2Case::BetaPlusZero => Ok(j.ladder().map(|m| w.b * m.value()).collect()),
        _ => Ok(vec![C64::new(0.0, 0.0)]),
    }
}

/// Eigenstate of `β⃗·J⃗` with eigenvalue `m₀b`.
///
/// For `b = 0` the label is ignored: the single eigenstate has `λ = 0`.
pub fn solve_aes(j: HalfInt, w: &Su2Weight, m0: HalfInt) -> Result<Su2AesSolution> {
    check_rep(j)?;
    let case = Su2Case::of(w)?;
    let two_j = j.twice() as usize;
    let dim = two_j + 1;
    let zero = C64::new(0.0, 0.0);
    let (raw, norm_factor, m0, lambda) = match case {
        Su2Case::General => {
            check_m0(j, m0)?;
            (general_amplitudes(j, m0, w), normalization(j, w, m0)?, Some(m0), w.b * m0.value())
        }
        Su2Case::BetaPlusZero => {
            check_m0(j, m0)?;
            // b = ±β₃; the closed form is written for b = β₃
            let m_eff = if (w.b - w.beta3).norm() <= (w.b + w.beta3).norm() { m0 } else { -m0 };
            let tau = w.beta_minus / w.beta3;
            let (amps, nf) = beta_plus_zero(j, m_eff, tau);
            (amps, nf, Some(m0), w.b * m0.value())
        }
        Su2Case::DegenerateCoherent => {
            let zeta = -(w.beta_minus * 2.0 / w.beta3);
            let cs = coherent_state(j, zeta)?;
            let nf = (1.0 + zeta.norm_sqr()).powf(two_j as f64);
            (cs.amplitudes.into_inner(), nf, None, zero)
        }
        Su2Case::LowestWeight => (StateVector::basis(dim, 0).into_inner(), 1.0, None, zero),
        Su2Case::HighestWeight => (StateVector::basis(dim, two_j).into_inner(), 1.0, None, zero),
    };
    let state = Su2State { j, amplitudes: StateVector::new(raw).normalized() };
    Ok(Su2AesSolution { weight: *w, case, m0, lambda, norm_factor, state })
}

/// Unnormalized `c_m = √((j+m)!(j-m)!/(2j)!) κⁿ Pₙ^{(m₀-m,-m₀-m)}(x)`,
/// `n = j+m`, read off as the coefficients of
/// `(1-τ₋ζ)^{j+m₀} (1-τ₊ζ)^{j-m₀}`.
pub(crate) fn general_amplitudes(j: HalfInt, m0: HalfInt, w: &Su2Weight) -> Vec<C64> {
    let tp = w.tau_plus.expect("general case has finite τ₊");
    let tm = w.tau_minus.expect("general case has finite τ₋");
    amplitudes_from_taus(j, m0, tp, tm)
}

pub(crate) fn amplitudes_from_taus(j: HalfInt, m0: HalfInt, tau_plus: C64, tau_minus: C64) -> Vec<C64> {
    let two_j = j.twice() as usize;
    let up = C64::new(j.value() + m0.value(), 0.0);
    let down = C64::new(j.value() - m0.value(), 0.0);
    let coeffs = lagrange_coeffs(-up, -down, tau_minus, tau_plus, two_j);
    coeffs
        .into_iter()
        .enumerate()
        .map(|(n, g)| g * (-ln_sqrt_binomial(two_j, n)).exp())
        .collect()
}

/// `β₊ = 0`, `b = β₃`: `c_m = √((j+m)!/(j-m)!) (-τ)^{m-m₀}/(m-m₀)!` for
/// `m ≥ m₀`, with `𝒩 = (j+m₀)!/(j-m₀)! P_{j-m₀}^{(0,2m₀)}(2|τ|²+1)`.
fn beta_plus_zero(j: HalfInt, m0: HalfInt, tau: C64) -> (Vec<C64>, f64) {
    let two_j = j.twice() as usize;
    let start = m0.int_diff(-j).expect("parity checked") as usize;
    let mut amps = vec![C64::new(0.0, 0.0); two_j + 1];
    let mut power = C64::new(1.0, 0.0);
    for (s, slot) in amps.iter_mut().enumerate().skip(start) {
        let p = s - start;
        if p > 0 {
            power = power * (-tau) / p as f64;
        }
        let ln_pre = 0.5 * (ln_factorial(s) - ln_factorial(two_j - s));
        *slot = power * ln_pre.exp();
    }
    let top = (j.value() - m0.value()) as usize;
    let jp = jacobi_p(
        top,
        C64::new(0.0, 0.0),
        C64::new(2.0 * m0.value(), 0.0),
        C64::new(2.0 * tau.norm_sqr() + 1.0, 0.0),
    );
    let pre = (ln_factorial(start) - ln_factorial(two_j - start)).exp();
    (amps, pre * jp.re)
}

/// Closed-form `𝒩` for the general case:
///
/// `(-1)^{j-|m₀|} S₊^{j+m₀} S₋^{j-m₀} (j+m₀)!(j-m₀)!/(2j)! P_{j-|m₀|}^{(-2j-1,0)}(1-2t/(S₊S₋))`.
pub fn normalization(j: HalfInt, w: &Su2Weight, m0: HalfInt) -> Result<f64> {
    check_rep(j)?;
    check_m0(j, m0)?;
    if Su2Case::of(w)? != Su2Case::General {
        return Err(Error::BranchUnavailable("closed-form 𝒩 needs b ≠ 0 and β₊ ≠ 0".into()));
    }
    let (sp, sm, t) = (w.s_plus().unwrap(), w.s_minus().unwrap(), w.t().unwrap());
    let jv = j.value();
    let mv = m0.value();
    let deg = (jv - mv.abs()) as usize;
    let sign = if deg % 2 == 0 { 1.0 } else { -1.0 };
    let two_j = j.twice() as usize;
    let up = (jv + mv) as usize;
    let ln_pre = (jv + mv) * sp.ln() + (jv - mv) * sm.ln() + ln_factorial(up) + ln_factorial(two_j - up) - ln_factorial(two_j);
    let arg = 1.0 - 2.0 * t / (sp * sm);
    let p = jacobi_p(deg, C64::new(-(two_j as f64) - 1.0, 0.0), C64::new(0.0, 0.0), C64::new(arg, 0.0));
    Ok(sign * ln_pre.exp() * p.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{eigen_residual, nullspace_vector};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn check_all_m0(j: HalfInt, w: &Su2Weight) {
        let m = w.matrix(j).unwrap();
        for m0 in j.ladder() {
            let sol = solve_aes(j, w, m0).unwrap();
            let r = eigen_residual(&m, sol.lambda, &sol.state.amplitudes);
            assert!(r < 1e-10, "j={j} m0={m0} case={:?} residual={r}", sol.case);
        }
    }

    #[test]
    fn j3_eigenbasis() {
        let j = h(4);
        let w = Su2Weight::real([0.0, 0.0, 1.0]);
        for m0 in j.ladder() {
            let sol = solve_aes(j, &w, m0).unwrap();
            assert_eq!(sol.case, Su2Case::BetaPlusZero);
            assert!((sol.lambda - c(m0.value(), 0.0)).norm() < 1e-15);
            assert!((sol.state.amplitude(m0) - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn spin_half_j1() {
        let sol = solve_aes(h(1), &Su2Weight::real([1.0, 0.0, 0.0]), h(1)).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sol.lambda - c(0.5, 0.0)).norm() < 1e-15);
        assert!((sol.state.amplitudes[0] - c(s, 0.0)).norm() < 1e-15);
        assert!((sol.state.amplitudes[1] - c(s, 0.0)).norm() < 1e-15);
        let m = sol.weight.matrix(h(1)).unwrap().shift(sol.lambda);
        let oracle = nullspace_vector(&m).unwrap();
        assert!(oracle.fidelity(&sol.state.amplitudes) > 1.0 - 1e-12);
    }

    #[test]
    fn sphere_weight_gives_coherent_state() {
        let (theta, phi) = (1.1f64, -0.7f64);
        let w = Su2Weight::real([theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]);
        let j = h(5);
        let sol = solve_aes(j, &w, -j).unwrap();
        let zeta0 = -(theta / 2.0).tan() * c(0.0, -phi).exp();
        let cs = coherent_state(j, zeta0).unwrap();
        assert!(sol.state.amplitudes.fidelity(&cs.amplitudes) > 1.0 - 1e-13);
        assert!((sol.lambda - c(-2.5, 0.0)).norm() < 1e-13);
        assert!((sol.norm_factor - (1.0 + zeta0.norm_sqr()).powi(5)).abs() < 1e-10 * sol.norm_factor);
    }

    #[test]
    fn residuals_across_cases() {
        let weights = [
            Su2Weight::new(c(0.3, 0.2), c(-0.5, 0.1), c(0.7, -0.4)),
            Su2Weight::new(c(1.0, 0.0), c(0.0, 1.0), c(0.4, 0.2)),  // β₊ = 0
            Su2Weight::new(c(1.0, 0.0), c(0.0, -1.0), c(0.4, 0.2)), // β₋ = 0
            Su2Weight::new(c(0.0, 0.0), c(0.0, 0.0), c(-0.8, 0.3)), // b = -β₃ direction check
            Su2Weight::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)),  // pure J₊
            Su2Weight::new(c(1.0, 0.0), c(0.0, -1.0), c(0.0, 0.0)), // pure J₋
        ];
        for w in &weights {
            for twice in 1..=5 {
                check_all_m0(h(twice), w);
            }
        }
    }

    #[test]
    fn degenerate_coherent_case() {
        // (1-ζ₀², -i(1+ζ₀²), 2ζ₀) has b = 0 and τ = -ζ₀
        let z0 = c(0.4, -0.9);
        let i = c(0.0, 1.0);
        let w = Su2Weight::new(c(1.0, 0.0) - z0 * z0, -i * (c(1.0, 0.0) + z0 * z0), z0 * 2.0);
        let j = h(3);
        let sol = solve_aes(j, &w, j).unwrap();
        assert_eq!(sol.case, Su2Case::DegenerateCoherent);
        assert_eq!(sol.m0, None);
        let r = eigen_residual(&w.matrix(j).unwrap(), sol.lambda, &sol.state.amplitudes);
        assert!(r < 1e-12);
        assert_eq!(spectrum(j, &w).unwrap(), vec![c(0.0, 0.0)]);
    }

    #[test]
    fn b_sign_relabeling() {
        // swapping τ₊ ↔ τ₋ together with m₀ → -m₀ is the b → -b relabeling
        let w = Su2Weight::new(c(0.3, 0.2), c(-0.5, 0.1), c(0.7, -0.4));
        let (tp, tm) = (w.tau_plus.unwrap(), w.tau_minus.unwrap());
        let j = h(5);
        for m0 in j.ladder() {
            let a = StateVector::new(amplitudes_from_taus(j, m0, tp, tm));
            let b = StateVector::new(amplitudes_from_taus(j, -m0, tm, tp));
            assert!(a.fidelity(&b) > 1.0 - 1e-14);
        }
    }

    #[test]
    fn beta_plus_limit_matches_general_branch() {
        // β₊ just above the dispatch threshold vs exactly zero
        let eps = 1e-9;
        let near = Su2Weight::new(c(1.0, 0.0), c(eps, 1.0), c(0.6, 0.1));
        let exact = Su2Weight::new(c(1.0, 0.0), c(0.0, 1.0), c(0.6, 0.1));
        assert_eq!(Su2Case::of(&near).unwrap(), Su2Case::General);
        assert_eq!(Su2Case::of(&exact).unwrap(), Su2Case::BetaPlusZero);
        let j = h(4);
        for m0 in j.ladder() {
            let a = solve_aes(j, &near, m0).unwrap();
            let b = solve_aes(j, &exact, m0).unwrap();
            assert!(a.state.amplitudes.fidelity(&b.state.amplitudes) > 1.0 - 1e-6, "m0={m0}");
        }
    }

    #[test]
    fn rejects_bad_labels() {
        let w = Su2Weight::real([0.0, 0.0, 1.0]);
        assert!(matches!(solve_aes(h(2), &w, h(3)), Err(Error::InvalidQuantumNumber { .. })));
        assert!(matches!(solve_aes(h(2), &w, h(1)), Err(Error::InvalidQuantumNumber { .. })));
        assert!(matches!(solve_aes(h(2), &Su2Weight::real([0.0; 3]), h(0)), Err(Error::ZeroWeight)));
        assert!(matches!(normalization(h(2), &w, h(0)), Err(Error::BranchUnavailable(_))));
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(h(2), &Su2Weight::real([3.0, 4.0, 0.0])).unwrap();
        let want = [c(-5.0, 0.0), c(0.0, 0.0), c(5.0, 0.0)];
        assert!(crate::oracle::multiset_distance(&s, &want) < 1e-14);
        let deg = Su2Weight::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0));
        assert_eq!(spectrum(h(2), &deg).unwrap().len(), 1);
    }

    #[test]
    fn normalization_matches_raw_norm() {
        let w = Su2Weight::new(c(0.3, 0.2), c(-0.5, 0.1), c(0.7, -0.4));
        for twice in 1..=7 {
            let j = h(twice);
            for m0 in j.ladder() {
                let raw = StateVector::new(general_amplitudes(j, m0, &w)).norm_sqr();
                let nf = normalization(j, &w, m0).unwrap();
                assert!((nf - raw).abs() < 1e-10 * raw, "j={j} m0={m0}: {nf} vs {raw}");
            }
        }
    }

    #[test]
    fn beta_plus_zero_normalization() {
        let j = h(5);
        let tau = c(0.7, -1.3);
        for m0 in j.ladder() {
            let (amps, nf) = beta_plus_zero(j, m0, tau);
            let raw = StateVector::new(amps).norm_sqr();
            assert!((nf - raw).abs() < 1e-10 * raw, "m0={m0}: {nf} vs {raw}");
        }
    }
}
