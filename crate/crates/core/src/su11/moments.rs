use super::solve::{resolve, solve_aes_su11, Su11Label};
use super::{SpectrumClass, Su11Weight, DEFAULT_TRUNCATION};
use crate::specfun::{gauss_2f1, jacobi_p};
use crate::{C64, HalfInt, Result};

/// `|Y|` below this fraction of `|S₊S₋|` selects the `Y = 0` forms.
const Y_ZERO_REL: f64 = 1e-12;

/// `(⟨K₃⟩, (ΔK₃)²)` in the eigenstate with the given label.
///
/// Closed forms cover the discrete classes and the continuous class with
/// real `r`. Complex `r`, `β₊ = 0` and `b = 0` are summed over the
/// certified truncated expansion.
pub fn k3_moments(k: HalfInt, w: &Su11Weight, label: Su11Label) -> Result<(f64, f64)> {
    let res = resolve(k, w, label)?;
    let kv = k.value();
    let closed = match res.class {
        SpectrumClass::DiscretePositive | SpectrumClass::DiscreteNegative => Some(res.r.unwrap().re),
        SpectrumClass::ContinuousSU11 => {
            let r = res.r.unwrap();
            (r.im.abs() <= 1e-14 * (1.0 + r.re.abs())).then_some(r.re)
        }
        _ => None,
    };
    let Some(r) = closed else {
        return Ok(solve_aes_su11(k, w, label, DEFAULT_TRUNCATION)?.state.k3_direct());
    };
    let (sp, sm, t) = (w.s_plus().unwrap(), w.s_minus().unwrap(), w.t().unwrap());
    let th = theta(kv, r, res.l, sp, sm, t)?;
    Ok(closed_moments(kv, r, sp, sm, t, th))
}

/// `Θ = F(k+r+1, k-r+1; 2k+1; z) / F(k+r, k-r; 2k; z)`, `z = -t/(S₊S₋)`.
///
/// For `r = ±(k+l)` this is `(2k/l) P_{l-1}^{(2k,1)}(y) / P_l^{(2k-1,0)}(y)`,
/// `y = 1 + 2t/(S₊S₋)`, and vanishes at `l = 0`.
pub fn theta(k: f64, r: f64, l: Option<usize>, sp: f64, sm: f64, t: f64) -> Result<f64> {
    let p = sp * sm;
    if let Some(l) = l {
        if l == 0 {
            return Ok(0.0);
        }
        let y = C64::new(1.0 + 2.0 * t / p, 0.0);
        let num = jacobi_p(l - 1, C64::new(2.0 * k, 0.0), C64::new(1.0, 0.0), y);
        let den = jacobi_p(l, C64::new(2.0 * k - 1.0, 0.0), C64::new(0.0, 0.0), y);
        return Ok(2.0 * k / l as f64 * (num / den).re);
    }
    let z = C64::new(-t / p, 0.0);
    let c = |x: f64| C64::new(x, 0.0);
    let num = gauss_2f1(c(k + r + 1.0), c(k - r + 1.0), c(2.0 * k + 1.0), z)?;
    let den = gauss_2f1(c(k + r), c(k - r), c(2.0 * k), z)?;
    Ok((num / den).re)
}

fn closed_moments(k: f64, r: f64, sp: f64, sm: f64, t: f64, th: f64) -> (f64, f64) {
    let p = sp * sm;
    let y = crate::su2::y_of(sp, sm);
    let q = k * k - r * r;
    if y.abs() <= Y_ZERO_REL * p.abs() {
        let h = 1.0 - sp;
        let mean = (h + 1.0) / (h - 1.0) * r;
        let var = 2.0 * k * h / ((h - 1.0) * (h - 1.0)) + q * h * h * t / (k * (h - 1.0).powi(4)) * th;
        return (mean, var);
    }
    let z = crate::su2::z_of(sp, sm);
    let mean = (-k * y + r * (sp - sm)) / p + q * y * t / (2.0 * k * p * p) * th;
    let var = (k + r) * (1.0 - sm) / (sm * sm) + (k - r) * (1.0 - sp) / (sp * sp)
        - q * y * y * t / ((p + t) * p * p)
        - q * t / (2.0 * k * p * p * p) * (p * y * y / (p + t) - 2.0 * k * y * y + z) * th
        - q * q * y * y * t * t / (4.0 * k * k * p.powi(4)) * th * th;
    (mean, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su11::{intelligent_weight_su11, Su11Family};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn assert_matches_direct(k: HalfInt, w: &Su11Weight, label: Su11Label) {
        let (mean, var) = k3_moments(k, w, label).unwrap();
        let (dm, dv) = solve_aes_su11(k, w, label, DEFAULT_TRUNCATION).unwrap().state.k3_direct();
        let scale = 1.0 + dm.abs() + dv.abs();
        assert!((mean - dm).abs() < 1e-9 * scale, "k={k} {label:?} mean {mean} vs {dm}");
        assert!((var - dv).abs() < 1e-9 * scale, "k={k} {label:?} var {var} vs {dv}");
    }

    #[test]
    fn k3_eigenstate_has_no_spread() {
        let w = Su11Weight::real([0.0, 0.0, 1.0]);
        for l in 0..4 {
            let (mean, var) = k3_moments(h(1), &w, Su11Label::L(l)).unwrap();
            assert!((mean - 0.5 - l as f64).abs() < 1e-14 && var.abs() < 1e-14);
        }
    }

    #[test]
    fn discrete_classes() {
        for w in [
            Su11Weight::real([1.0, 0.0, 2.0]),
            Su11Weight::real([1.0, 0.0, -2.0]),
            Su11Weight::from_taus(c(1.6, 0.4), c(-0.5, 0.2)),
            Su11Weight::from_taus(c(0.1, -0.6), c(1.2, 0.9)),
        ] {
            for twice in 1..=4 {
                for l in 0..4 {
                    assert_matches_direct(h(twice), &w, Su11Label::L(l));
                }
            }
        }
    }

    #[test]
    fn continuous_real_r() {
        for (w, r) in [
            (Su11Weight::from_taus(c(0.3, 0.4), c(-0.5, 0.2)), 0.35),
            (Su11Weight::from_taus(c(0.7, -0.1), c(0.2, 0.6)), -1.7),
            (Su11Weight::from_taus(c(0.1, 0.1), c(-0.2, 0.05)), 2.4),
        ] {
            for twice in 1..=4 {
                assert_matches_direct(h(twice), &w, Su11Label::Lambda(w.b * r));
            }
        }
    }

    #[test]
    fn y_zero_branch() {
        let (w, _) = intelligent_weight_su11(Su11Family::K2K3(0.6));
        assert!(w.y().unwrap().abs() < 1e-12 * (w.s_plus().unwrap() * w.s_minus().unwrap()).abs());
        for twice in 1..=4 {
            for l in 0..4 {
                assert_matches_direct(h(twice), &w, Su11Label::L(l));
            }
        }
    }

    #[test]
    fn special_cases_fall_back_to_sums() {
        let w = Su11Weight::from_taus(c(0.3, 0.4), c(-0.5, 0.2));
        assert_matches_direct(h(2), &w, Su11Label::Lambda(c(0.7, -0.3)));
        let beta_plus_zero = Su11Weight::new(c(0.6, 0.0), c(0.0, 0.6), c(1.5, 0.2));
        assert_matches_direct(h(2), &beta_plus_zero, Su11Label::L(1));
    }

    #[test]
    fn coherent_limit_has_zero_theta() {
        let w = Su11Weight::real([1.0, 0.0, 2.0]);
        let (sp, sm, t) = (w.s_plus().unwrap(), w.s_minus().unwrap(), w.t().unwrap());
        assert_eq!(theta(1.5, 1.5, Some(0), sp, sm, t).unwrap(), 0.0);
    }
}
