//! Modified Bessel functions of integer order.

use super::{ln_factorial, SERIES_MAX_TERMS, SERIES_REL_TOL, ZERO};
use crate::C64;

/// Entire function `Σ_m w^m / (m! (m+ν)!)`, equal to `w^{-ν/2} I_ν(2√w)`
/// without any branch choice.
pub fn bessel_i_entire(nu: u32, w: C64) -> C64 {
    let mut term = C64::new((-ln_factorial(nu as usize)).exp(), 0.0);
    let mut sum = term;
    let mut small = 0;
    for m in 0..SERIES_MAX_TERMS {
        let mf = m as f64;
        term = term * w / ((mf + 1.0) * (mf + nu as f64 + 1.0));
        sum += term;
        if term.norm() <= SERIES_REL_TOL * sum.norm() {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    sum
}

/// Modified Bessel function `I_ν(x)` of non-negative integer order.
pub fn bessel_i(nu: u32, x: C64) -> C64 {
    if x == ZERO {
        return if nu == 0 { C64::new(1.0, 0.0) } else { ZERO };
    }
    let half = x / 2.0;
    half.powu(nu) * bessel_i_entire(nu, half * half)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_values() {
        assert_eq!(bessel_i(0, ZERO), C64::new(1.0, 0.0));
        assert_eq!(bessel_i(1, ZERO), ZERO);
    }

    #[test]
    fn agrees_with_direct_series() {
        for nu in 0..4u32 {
            for x in [0.5f64, 2.0, 7.5] {
                let mut direct = 0.0;
                let mut fact_m = 1.0;
                for m in 0..60 {
                    if m > 0 {
                        fact_m *= m as f64;
                    }
                    let fact_mn: f64 = (1..=(m + nu as usize)).map(|i| i as f64).product();
                    direct += (x / 2.0).powi(2 * m as i32 + nu as i32) / (fact_m * fact_mn);
                }
                let got = bessel_i(nu, C64::new(x, 0.0));
                assert!((got.re - direct).abs() <= 1e-14 * direct, "ν={nu} x={x}");
                assert_eq!(got.im, 0.0);
            }
        }
        assert!((bessel_i(0, C64::new(2.0, 0.0)).re - 2.279_585_302_336_067_3).abs() < 1e-15);
    }

    #[test]
    fn imaginary_argument_gives_bessel_j() {
        // I_0(2i) = J_0(2)
        let v = bessel_i(0, C64::new(0.0, 2.0));
        assert!((v.re - 0.223_890_779_141_235_67).abs() < 1e-15);
    }
}
