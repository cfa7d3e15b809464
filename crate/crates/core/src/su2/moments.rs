use super::{check_rep, solve_aes, Su2Case, Su2Weight};
use crate::specfun::jacobi_p;
use crate::{C64, HalfInt, Result};

/// `|Y|` below this fraction of `S₊S₋` selects the `Y = 0` forms.
const Y_ZERO_REL: f64 = 1e-12;

/// `(⟨J₃⟩, (ΔJ₃)²)` in the eigenstate with label `m₀`.
///
/// The general case uses the closed forms in `S±`, `t`, `Y`, `Z` and the
/// Jacobi ratio `Ω`. Coherent and extremal-weight cases have their own
/// closed forms; for `β₊ = 0` the finite explicit expansion is summed.
pub fn j3_moments(j: HalfInt, w: &Su2Weight, m0: HalfInt) -> Result<(f64, f64)> {
    check_rep(j)?;
    let jv = j.value();
    match Su2Case::of(w)? {
        Su2Case::General => {}
        Su2Case::LowestWeight => return Ok((-jv, 0.0)),
        Su2Case::HighestWeight => return Ok((jv, 0.0)),
        Su2Case::DegenerateCoherent => {
            let q = (w.beta_minus * 2.0 / w.beta3).norm_sqr();
            return Ok((-jv * (1.0 - q) / (1.0 + q), 2.0 * jv * q / ((1.0 + q) * (1.0 + q))));
        }
        Su2Case::BetaPlusZero => return Ok(solve_aes(j, w, m0)?.state.j3_direct()),
    }
    // validates m₀ as well
    super::normalization(j, w, m0)?;
    let (sp, sm, t) = (w.s_plus().unwrap(), w.s_minus().unwrap(), w.t().unwrap());
    Ok(closed_moments(jv, m0.value(), sp, sm, t))
}

/// `Ω = P_{j-|m₀|-1}^{(-2j,1)}(y) / P_{j-|m₀|}^{(-2j-1,0)}(y)`,
/// `y = 1 - 2t/(S₊S₋)`; zero for `|m₀| = j`.
pub fn omega(j: f64, m0: f64, sp: f64, sm: f64, t: f64) -> f64 {
    let deg = (j - m0.abs()).round() as usize;
    if deg == 0 {
        return 0.0;
    }
    let y = C64::new(1.0 - 2.0 * t / (sp * sm), 0.0);
    let num = jacobi_p(deg - 1, C64::new(-2.0 * j, 0.0), C64::new(1.0, 0.0), y);
    let den = jacobi_p(deg, C64::new(-2.0 * j - 1.0, 0.0), C64::new(0.0, 0.0), y);
    (num / den).re
}

fn closed_moments(j: f64, m0: f64, sp: f64, sm: f64, t: f64) -> (f64, f64) {
    let om = omega(j, m0, sp, sm, t);
    let jm = j + m0.abs();
    let p = sp * sm;
    let y = super::y_of(sp, sm);
    if y.abs() <= Y_ZERO_REL * p {
        let h = sp - 1.0;
        let mean = (h - 1.0) / (h + 1.0) * m0;
        let var = 2.0 * j * h / ((h + 1.0) * (h + 1.0)) - 2.0 * jm * h * h * t / (h + 1.0).powi(4) * om;
        return (mean, var);
    }
    let z = super::z_of(sp, sm);
    let mean = (j * y + m0 * (sp - sm)) / p - jm * y * t / (p * p) * om;
    let var = (j + m0) * (sp - 1.0) / (sp * sp) + (j - m0) * (sm - 1.0) / (sm * sm)
        + (j * j - m0 * m0) * y * y * t / ((p - t) * p * p)
        + jm * t / (p * p * p) * (p * y * y / (p - t) + 2.0 * j * y * y + z) * om
        - jm * jm * y * y * t * t / (p.powi(4)) * om * om;
    (mean, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::intelligent_weight_su2;
    use crate::su2::Su2Family;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn assert_matches_direct(j: HalfInt, w: &Su2Weight) {
        for m0 in j.ladder() {
            let (mean, var) = j3_moments(j, w, m0).unwrap();
            let (dm, dv) = solve_aes(j, w, m0).unwrap().state.j3_direct();
            assert!((mean - dm).abs() < 1e-9, "j={j} m0={m0} mean {mean} vs {dm}");
            assert!((var - dv).abs() < 1e-9, "j={j} m0={m0} var {var} vs {dv}");
        }
    }

    #[test]
    fn j3_eigenstate_has_no_spread() {
        let j = h(3);
        for m0 in j.ladder() {
            let (mean, var) = j3_moments(j, &Su2Weight::real([0.0, 0.0, 1.0]), m0).unwrap();
            assert!((mean - m0.value()).abs() < 1e-14 && var.abs() < 1e-14);
        }
    }

    #[test]
    fn generic_weights() {
        for w in [
            Su2Weight::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.5)),
            Su2Weight::new(c(0.3, 0.2), c(-0.5, 0.1), c(0.7, -0.4)),
            Su2Weight::new(c(-1.2, 0.4), c(0.2, 0.9), c(0.1, 0.1)),
        ] {
            for twice in 1..=7 {
                assert_matches_direct(h(twice), &w);
            }
        }
    }

    #[test]
    fn y_zero_branch() {
        // |τ₊τ₋| = 1 on the J₁J₃ family with γ² < 1
        let w = intelligent_weight_su2(Su2Family::J1J3(0.35));
        assert!(w.y().unwrap().abs() < 1e-12);
        for twice in 1..=6 {
            assert_matches_direct(h(twice), &w);
        }
    }

    #[test]
    fn coherent_limit_has_zero_omega() {
        let w = Su2Weight::new(c(0.3, 0.2), c(-0.5, 0.1), c(0.7, -0.4));
        let (sp, sm, t) = (w.s_plus().unwrap(), w.s_minus().unwrap(), w.t().unwrap());
        assert_eq!(omega(2.5, 2.5, sp, sm, t), 0.0);
        assert_eq!(omega(2.5, -2.5, sp, sm, t), 0.0);
    }
}
