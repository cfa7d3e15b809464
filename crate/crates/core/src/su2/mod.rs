//! SU(2) coherent states, algebra eigenstates, normalization, `J₃`
//! statistics and intelligent-state weights over the `|j,m⟩` basis.

mod moments;
mod solve;

pub use moments::j3_moments;
pub use solve::{normalization, solve_aes, spectrum, Su2AesSolution, Su2Case};
pub(crate) use solve::general_amplitudes;

use serde::Serialize;

use crate::oracle::{ladder_to_cartesian, DenseComplexMatrix};
use crate::specfun::ln_factorial;
use crate::{C64, Error, HalfInt, Result, StateVector, ZERO_REL};

/// Coefficients of `β₁J₁ + β₂J₂ + β₃J₃` with the derived quantities of the
/// closed-form solution. `τ±` are `None` where they are infinite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Su2Weight {
    pub beta1: C64,
    pub beta2: C64,
    pub beta3: C64,
    /// `√(β₁²+β₂²+β₃²)`, principal branch.
    pub b: C64,
    /// `(β₁+iβ₂)/2`, the coefficient of `J₋`.
    pub beta_plus: C64,
    /// `(β₁-iβ₂)/2`, the coefficient of `J₊`.
    pub beta_minus: C64,
    pub tau_plus: Option<C64>,
    pub tau_minus: Option<C64>,
}

impl Su2Weight {
    pub fn new(beta1: C64, beta2: C64, beta3: C64) -> Self {
        let b = (beta1 * beta1 + beta2 * beta2 + beta3 * beta3).sqrt();
        let i = C64::new(0.0, 1.0);
        let beta_plus = (beta1 + i * beta2) / 2.0;
        let beta_minus = (beta1 - i * beta2) / 2.0;
        // τ± = 2β₋/(β₃±b) = -(β₃∓b)/(2β₊); take the larger denominator
        let tau = |sign: f64| {
            let d1 = beta3 + b * sign;
            let d2 = beta_plus * 2.0;
            if d1.norm() >= d2.norm() && d1.norm() > 0.0 {
                Some(beta_minus * 2.0 / d1)
            } else if d2.norm() > 0.0 {
                Some(-(beta3 - b * sign) / d2)
            } else {
                None
            }
        };
        Su2Weight {
            beta1,
            beta2,
            beta3,
            b,
            beta_plus,
            beta_minus,
            tau_plus: tau(1.0),
            tau_minus: tau(-1.0),
        }
    }

    pub fn real(beta: [f64; 3]) -> Self {
        Self::new(C64::new(beta[0], 0.0), C64::new(beta[1], 0.0), C64::new(beta[2], 0.0))
    }

    pub fn betas(&self) -> [C64; 3] {
        [self.beta1, self.beta2, self.beta3]
    }

    /// `max |βᵢ|`, the reference for every "is zero" decision.
    pub fn scale(&self) -> f64 {
        self.betas().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub(crate) fn is_negligible(&self, q: C64) -> bool {
        q.norm() < ZERO_REL * self.scale()
    }

    /// `b = 0` is decided on `b²`: the square root would inflate rounding
    /// in `β₁²+β₂²+β₃²` to `√ε`.
    pub(crate) fn b_is_zero(&self) -> bool {
        (self.b * self.b).norm() < ZERO_REL * self.scale() * self.scale()
    }

    /// `κ = τ₊ - τ₋ = b/β₊`.
    pub fn kappa(&self) -> Option<C64> {
        (self.beta_plus.norm() > 0.0).then(|| self.b / self.beta_plus)
    }

    /// `x = β₃/b`.
    pub fn x(&self) -> Option<C64> {
        (self.b.norm() > 0.0).then(|| self.beta3 / self.b)
    }

    /// `t = |κ|²`.
    pub fn t(&self) -> Option<f64> {
        self.kappa().map(|k| k.norm_sqr())
    }

    /// `S₊ = 1 + |τ₋|²`.
    pub fn s_plus(&self) -> Option<f64> {
        self.tau_minus.map(|t| 1.0 + t.norm_sqr())
    }

    /// `S₋ = 1 + |τ₊|²`.
    pub fn s_minus(&self) -> Option<f64> {
        self.tau_plus.map(|t| 1.0 + t.norm_sqr())
    }

    /// `Y = S₊S₋ - S₊ - S₋`.
    pub fn y(&self) -> Option<f64> {
        Some(y_of(self.s_plus()?, self.s_minus()?))
    }

    /// `Z = S₊²(1-S₋) + S₋²(1-S₊)`.
    pub fn z(&self) -> Option<f64> {
        Some(z_of(self.s_plus()?, self.s_minus()?))
    }

    /// `h = |τ₋|²`.
    pub fn h(&self) -> Option<f64> {
        self.tau_minus.map(|t| t.norm_sqr())
    }

    /// The operator `β⃗·J⃗` in the spin-`j` representation.
    pub fn matrix(&self, j: HalfInt) -> Result<DenseComplexMatrix> {
        Ok(DenseComplexMatrix::combination(&rep_matrices(j)?, self.betas()))
    }
}

pub(crate) fn y_of(sp: f64, sm: f64) -> f64 {
    sp * sm - sp - sm
}

pub(crate) fn z_of(sp: f64, sm: f64) -> f64 {
    sp * sp * (1.0 - sm) + sm * sm * (1.0 - sp)
}

/// Amplitudes over `|j,-j⟩ … |j,j⟩`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Su2State {
    pub j: HalfInt,
    pub amplitudes: StateVector,
}

impl Su2State {
    pub fn amplitude(&self, m: HalfInt) -> C64 {
        let idx = m.int_diff(-self.j).expect("m and j must share parity");
        self.amplitudes[idx as usize]
    }

    /// `Σ m |c_m|²` and `Σ m² |c_m|² - (Σ m |c_m|²)²` for the normalized state.
    pub fn j3_direct(&self) -> (f64, f64) {
        let norm = self.amplitudes.norm_sqr();
        let (mut s1, mut s2) = (0.0, 0.0);
        for (m, c) in self.j.ladder().zip(self.amplitudes.iter()) {
            let p = c.norm_sqr() / norm;
            s1 += m.value() * p;
            s2 += m.value() * m.value() * p;
        }
        (s1, s2 - s1 * s1)
    }
}

pub(crate) fn check_rep(j: HalfInt) -> Result<()> {
    if j.twice() < 1 {
        return Err(Error::InvalidRep(format!("j = {j} must be a positive half-integer")));
    }
    Ok(())
}

/// `J₁, J₂, J₃` on `|j,-j⟩ … |j,j⟩` (index 0 is `m = -j`).
pub fn rep_matrices(j: HalfInt) -> Result<[DenseComplexMatrix; 3]> {
    check_rep(j)?;
    let dim = j.twice() as usize + 1;
    let jv = j.value();
    let mut jp = DenseComplexMatrix::zeros(dim);
    let mut j3 = DenseComplexMatrix::zeros(dim);
    for (idx, m) in j.ladder().enumerate() {
        let mv = m.value();
        j3[(idx, idx)] = C64::new(mv, 0.0);
        if idx + 1 < dim {
            jp[(idx + 1, idx)] = C64::new(((jv - mv) * (jv + mv + 1.0)).sqrt(), 0.0);
        }
    }
    let jm = jp.adjoint();
    Ok(ladder_to_cartesian(&jp, &jm, j3))
}

/// `ln √((2j)! / ((j+m)! (j-m)!))` with `n = j+m`.
pub(crate) fn ln_sqrt_binomial(two_j: usize, n: usize) -> f64 {
    0.5 * (ln_factorial(two_j) - ln_factorial(n) - ln_factorial(two_j - n))
}

/// Standard coherent state `|j,ζ⟩`,
/// `c_m = (1+|ζ|²)^{-j} √((2j)!/((j+m)!(j-m)!)) ζ^{j+m}`.
pub fn coherent_state(j: HalfInt, zeta: C64) -> Result<Su2State> {
    check_rep(j)?;
    let two_j = j.twice() as usize;
    let r = zeta.norm();
    let phase = if r > 0.0 { zeta / r } else { C64::new(1.0, 0.0) };
    let log_base = -j.value() * (1.0 + r * r).ln();
    let amps = (0..=two_j)
        .map(|n| {
            if n > 0 && r == 0.0 {
                return C64::new(0.0, 0.0);
            }
            let ln_mag = log_base + ln_sqrt_binomial(two_j, n) + if n > 0 { n as f64 * r.ln() } else { 0.0 };
            phase.powu(n as u32) * ln_mag.exp()
        })
        .collect();
    Ok(Su2State { j, amplitudes: StateVector::new(amps) })
}

/// `⟨j,ζ₁|j,ζ₂⟩ = (1+|ζ₁|²)^{-j} (1+|ζ₂|²)^{-j} (1+ζ₁*ζ₂)^{2j}`.
pub fn coherent_overlap(j: HalfInt, z1: C64, z2: C64) -> C64 {
    let jv = j.value();
    (C64::new(1.0, 0.0) + z1.conj() * z2).powu(j.twice() as u32)
        * (1.0 + z1.norm_sqr()).powf(-jv)
        * (1.0 + z2.norm_sqr()).powf(-jv)
}

/// Intelligent-state families and the generator pair each one saturates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Su2Family {
    /// `(η, -i, 0)`, Schrödinger–Robertson for `(J₁, J₂)`.
    Generalized(C64),
    /// `(1, iγ, 0)`, Heisenberg for `(J₁, J₂)`.
    J1J2(f64),
    /// `(1, 0, iγ)`, Heisenberg for `(J₁, J₃)`.
    J1J3(f64),
    /// `(0, 1, iγ)`, Heisenberg for `(J₂, J₃)`.
    J2J3(f64),
}

impl Su2Family {
    /// Zero-based generator indices `(A, B)`.
    pub fn operator_pair(&self) -> (usize, usize) {
        match self {
            Su2Family::Generalized(_) | Su2Family::J1J2(_) => (0, 1),
            Su2Family::J1J3(_) => (0, 2),
            Su2Family::J2J3(_) => (1, 2),
        }
    }

    /// Ordinary families have vanishing covariance as well.
    pub fn is_ordinary(&self) -> bool {
        !matches!(self, Su2Family::Generalized(_))
    }
}

pub fn intelligent_weight_su2(family: Su2Family) -> Su2Weight {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match family {
        Su2Family::Generalized(eta) => Su2Weight::new(eta, -i, zero),
        Su2Family::J1J2(g) => Su2Weight::new(one, i * g, zero),
        Su2Family::J1J3(g) => Su2Weight::new(one, zero, i * g),
        Su2Family::J2J3(g) => Su2Weight::new(zero, one, i * g),
    }
}
