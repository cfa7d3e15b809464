//! Gauss and Kummer hypergeometric series.

use super::{ONE, SERIES_MAX_TERMS, SERIES_REL_TOL, ZERO};
use twofloat::TwoFloat;

use crate::{C64, Error, Result};

fn nonpositive_integer(a: C64) -> Option<usize> {
    if a.im == 0.0 && a.re <= 0.0 && a.re.fract() == 0.0 {
        Some((-a.re) as usize)
    } else {
        None
    }
}

type Dd = num_complex::Complex<TwoFloat>;

fn dd(z: C64) -> Dd {
    Dd::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

/// `x / d` to double-double accuracy: `TwoFloat` division alone is only
/// good to about one ulp of `f64`, so the quotient gets two correction
/// steps.
fn div_real(x: TwoFloat, d: TwoFloat) -> TwoFloat {
    let q1 = TwoFloat::from(x.hi() / d.hi());
    let r = x - d * q1;
    let q2 = TwoFloat::from(r.hi() / d.hi());
    let r = r - d * q2;
    q1 + q2 + TwoFloat::from(r.hi() / d.hi())
}

fn div_dd(x: Dd, d: Dd) -> Dd {
    let m = d.re * d.re + d.im * d.im;
    let n = x * d.conj();
    Dd::new(div_real(n.re, m), div_real(n.im, m))
}

fn dd_norm(z: &Dd) -> f64 {
    f64::from(z.re).hypot(f64::from(z.im))
}

/// `Σ_n Π(upper)_n / Π(lower)_n · zⁿ/n!`, accumulated in double-double so
/// that cancelling alternating sums keep their relative accuracy.
///
/// The series stops exactly when an upper parameter reaches zero, and
/// after two consecutive terms below `1e-16` of the partial sum otherwise.
fn sum_series(name: &str, upper: &[C64], lower: &[C64], z: C64) -> Result<C64> {
    let zd = dd(z);
    let upper_dd: Vec<Dd> = upper.iter().map(|&a| dd(a)).collect();
    let lower_dd: Vec<Dd> = lower.iter().map(|&c| dd(c)).collect();
    let mut term = dd(ONE);
    let mut sum = dd(ONE);
    let mut small = 0;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        if upper.iter().any(|&a| a + nf == ZERO) {
            return Ok(to_c64(&sum));
        }
        if lower.iter().any(|&c| c + nf == ZERO) {
            return Err(Error::InvalidParameter(format!(
                "{name} lower parameter reaches zero at term {n}"
            )));
        }
        let shift = Dd::new(TwoFloat::from(nf), TwoFloat::from(0.0));
        let mut num = zd;
        for a in &upper_dd {
            num = num * (*a + shift);
        }
        let mut den = dd(C64::new(nf + 1.0, 0.0));
        for c in &lower_dd {
            den = den * (*c + shift);
        }
        term = div_dd(term * num, den);
        sum = sum + term;
        let s = dd_norm(&sum);
        if !s.is_finite() {
            return Err(Error::NonConvergent { terms: n + 1 });
        }
        if dd_norm(&term) <= SERIES_REL_TOL * s {
            small += 1;
            if small >= 2 {
                return Ok(to_c64(&sum));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergent { terms: SERIES_MAX_TERMS })
}

fn to_c64(z: &Dd) -> C64 {
    C64::new(f64::from(z.re), f64::from(z.im))
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)`.
///
/// Terminating series are summed exactly for any `z`. Otherwise the power
/// series is used directly, or after the Pfaff transformation
/// `(1-z)^{-a} ₂F₁(a, c-b; c; z/(z-1))` when that maps `z` closer to the
/// origin. Hitting `c + n = 0` before the series terminates is an error.
pub fn gauss_2f1(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    if z == ZERO {
        return Ok(ONE);
    }
    let terminating = nonpositive_integer(a).is_some() || nonpositive_integer(b).is_some();
    if !terminating {
        if let Some(m) = nonpositive_integer(c) {
            return Err(Error::InvalidParameter(format!(
                "₂F₁ lower parameter c = -{m} is a non-positive integer"
            )));
        }
        let w = z / (z - 1.0);
        if z.norm() > 0.5 && w.norm() < z.norm() {
            let inner = raw_2f1(a, c - b, c, w)?;
            return Ok((ONE - z).powc(-a) * inner);
        }
        if z.norm() >= 1.0 {
            return Err(Error::NonConvergent { terms: 0 });
        }
    }
    raw_2f1(a, b, c, z)
}

fn raw_2f1(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    sum_series("₂F₁", &[a, b], &[c], z)
}

/// Kummer confluent hypergeometric function `Φ(a; c; z) = ₁F₁(a; c; z)`.
pub fn confluent_phi(a: C64, c: C64, z: C64) -> Result<C64> {
    if z == ZERO {
        return Ok(ONE);
    }
    if nonpositive_integer(a).is_none() {
        if let Some(m) = nonpositive_integer(c) {
            return Err(Error::InvalidParameter(format!(
                "Φ lower parameter c = -{m} is a non-positive integer"
            )));
        }
    }
    sum_series("Φ", &[a], &[c], z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::jacobi_p;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1e-300)
    }

    #[test]
    fn gauss_at_origin() {
        assert_eq!(gauss_2f1(c(0.3, 1.0), c(2.0, 0.0), c(-0.5, 0.0), ZERO).unwrap(), ONE);
    }

    #[test]
    fn gauss_logarithm() {
        // ₂F₁(1,1;2;z) = -ln(1-z)/z
        for z in [c(0.5, 0.0), c(-3.0, 0.0), c(0.2, 0.6), c(-0.9, -2.0)] {
            let expected = -(ONE - z).ln() / z;
            let got = gauss_2f1(ONE, ONE, c(2.0, 0.0), z).unwrap();
            assert!(close(got, expected, 1e-13), "z={z}: {got} vs {expected}");
        }
    }

    #[test]
    fn gauss_terminating_matches_jacobi() {
        // P_n^{(α,β)}(x) = (α+1)_n/n! ₂F₁(-n, n+α+β+1; α+1; (1-x)/2)
        let (alpha, beta) = (c(0.7, 0.0), c(-0.4, 0.3));
        let x = c(3.5, -1.0);
        for n in 0..8usize {
            let pre = crate::specfun::rising(alpha + 1.0, n)
                / (1..=n).fold(1.0, |a, i| a * i as f64);
            let f = gauss_2f1(
                c(-(n as f64), 0.0),
                alpha + beta + (n as f64 + 1.0),
                alpha + 1.0,
                (ONE - x) / 2.0,
            )
            .unwrap();
            assert!(close(pre * f, jacobi_p(n, alpha, beta, x), 1e-12), "n={n}");
        }
    }

    #[test]
    fn gauss_rejects_pole_before_termination() {
        let err = gauss_2f1(c(0.5, 0.0), c(1.0, 0.0), c(-2.0, 0.0), c(0.1, 0.0));
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
        // terminates at n = 1 before c + n reaches zero at n = 3
        assert!(gauss_2f1(c(-1.0, 0.0), c(1.0, 0.0), c(-3.0, 0.0), c(0.1, 0.0)).is_ok());
    }

    #[test]
    fn confluent_exponential() {
        assert!(close(confluent_phi(ONE, ONE, ONE).unwrap(), c(std::f64::consts::E, 0.0), 1e-15));
        let z = c(-2.0, 1.5);
        assert!(close(confluent_phi(c(0.7, 0.1), c(0.7, 0.1), z).unwrap(), z.exp(), 1e-13));
    }

    proptest! {
        #[test]
        fn kummer_transformation(
            ar in -3.0f64..3.0, ai in -1.0f64..1.0,
            cr in 0.5f64..4.0,
            zr in -3.5f64..3.5, zi in -3.5f64..3.5,
        ) {
            let a = c(ar, ai);
            let cc = c(cr, 0.0);
            let z = c(zr, zi);
            let left = confluent_phi(a, cc, z).unwrap();
            let right = z.exp() * confluent_phi(cc - a, cc, -z).unwrap();
            prop_assert!((left - right).norm() < 1e-12 * left.norm());
        }

        #[test]
        fn pfaff_branch_is_continuous(
            ar in 0.1f64..2.0, br in 0.1f64..2.0, cr in 2.5f64..4.0,
            zr in -0.8f64..-0.4,
        ) {
            // straddles |z| = 1/2 where the Pfaff branch switches on
            let z = c(zr, 0.0);
            let direct = raw_2f1(c(ar, 0.0), c(br, 0.0), c(cr, 0.0), z).unwrap();
            let auto = gauss_2f1(c(ar, 0.0), c(br, 0.0), c(cr, 0.0), z).unwrap();
            prop_assert!(close(auto, direct, 1e-12));
        }
    }
}
