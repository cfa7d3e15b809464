//! SU(1,1) discrete-series algebra eigenstates: parameter-space
//! classification, unit-disk and Barut–Girardello constructions,
//! normalization, `K₃` statistics and intelligent-state weights.

mod bg;
mod moments;
mod solve;

pub use bg::{bg_overlap, bg_rep_eval, bg_rep_eval_branch, bg_rep_series, bg_state, BgState, KummerBranch};
pub use moments::k3_moments;
pub use solve::{expansion_coefficients, normalization_su11, solve_aes_su11, Su11AesSolution, Su11Label};

use serde::Serialize;

use crate::oracle::{truncated_su11_matrices, DenseComplexMatrix};
use crate::{C64, Error, HalfInt, Result, StateVector, ZERO_REL};

/// Default number of basis states before adaptive doubling.
pub const DEFAULT_TRUNCATION: usize = 256;

/// Doubling stops here.
pub const MAX_TRUNCATION: usize = 8192;

/// Required truncation certificate.
pub const TAIL_TOL: f64 = 1e-10;

/// `|τ|` within this distance of 1 counts as the unit circle.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Coefficients of `β₁K₁ + β₂K₂ + β₃K₃` and derived quantities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Su11Weight {
    pub beta1: C64,
    pub beta2: C64,
    pub beta3: C64,
    /// `√(β₃²-β₁²-β₂²)`, principal branch.
    pub b: C64,
    /// `(β₁+iβ₂)/2`, the coefficient of `K₋`.
    pub beta_plus: C64,
    /// `(β₁-iβ₂)/2`, the coefficient of `K₊`.
    pub beta_minus: C64,
    pub tau_plus: Option<C64>,
    pub tau_minus: Option<C64>,
}

impl Su11Weight {
    pub fn new(beta1: C64, beta2: C64, beta3: C64) -> Self {
        let b = (beta3 * beta3 - beta1 * beta1 - beta2 * beta2).sqrt();
        let i = C64::new(0.0, 1.0);
        let beta_plus = (beta1 + i * beta2) / 2.0;
        let beta_minus = (beta1 - i * beta2) / 2.0;
        // τ± = 2β₋/(β₃±b) = (β₃∓b)/(2β₊); take the larger denominator
        let tau = |sign: f64| {
            let d1 = beta3 + b * sign;
            let d2 = beta_plus * 2.0;
            if d1.norm() >= d2.norm() && d1.norm() > 0.0 {
                Some(beta_minus * 2.0 / d1)
            } else if d2.norm() > 0.0 {
                Some((beta3 - b * sign) / d2)
            } else {
                None
            }
        };
        Su11Weight {
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

    /// Weight with prescribed `τ₊ ≠ τ₋` and `b = 1`:
    /// `β₊ = 1/(τ₋-τ₊)`, `β₋ = β₊τ₊τ₋`, `β₃ = β₊(τ₊+τ₋)`.
    pub fn from_taus(tau_plus: C64, tau_minus: C64) -> Self {
        let bp = (tau_minus - tau_plus).inv();
        let bm = bp * tau_plus * tau_minus;
        let b3 = bp * (tau_plus + tau_minus);
        let i = C64::new(0.0, 1.0);
        Self::new(bp + bm, (bp - bm) / i, b3)
    }

    pub fn betas(&self) -> [C64; 3] {
        [self.beta1, self.beta2, self.beta3]
    }

    pub fn scale(&self) -> f64 {
        self.betas().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub(crate) fn is_negligible(&self, q: C64) -> bool {
        q.norm() < ZERO_REL * self.scale()
    }

    /// Decided on `b²`, as for SU(2).
    pub(crate) fn b_is_zero(&self) -> bool {
        (self.b * self.b).norm() < ZERO_REL * self.scale() * self.scale()
    }

    /// `κ = τ₊ - τ₋ = -b/β₊`.
    pub fn kappa(&self) -> Option<C64> {
        (self.beta_plus.norm() > 0.0).then(|| -self.b / self.beta_plus)
    }

    pub fn x(&self) -> Option<C64> {
        (self.b.norm() > 0.0).then(|| self.beta3 / self.b)
    }

    pub fn t(&self) -> Option<f64> {
        self.kappa().map(|k| k.norm_sqr())
    }

    /// `S₊ = 1 - |τ₋|²`.
    pub fn s_plus(&self) -> Option<f64> {
        self.tau_minus.map(|t| 1.0 - t.norm_sqr())
    }

    /// `S₋ = 1 - |τ₊|²`.
    pub fn s_minus(&self) -> Option<f64> {
        self.tau_plus.map(|t| 1.0 - t.norm_sqr())
    }

    pub fn y(&self) -> Option<f64> {
        Some(crate::su2::y_of(self.s_plus()?, self.s_minus()?))
    }

    pub fn z(&self) -> Option<f64> {
        Some(crate::su2::z_of(self.s_plus()?, self.s_minus()?))
    }

    pub fn h(&self) -> Option<f64> {
        self.tau_minus.map(|t| t.norm_sqr())
    }

    /// `τ = 2β₋/β₃` of the `b = 0` case; zero for pure `K₋`.
    pub fn tau_degenerate(&self) -> Option<C64> {
        if self.is_negligible(self.beta3) {
            self.is_negligible(self.beta_minus).then_some(C64::new(0.0, 0.0))
        } else {
            Some(self.beta_minus * 2.0 / self.beta3)
        }
    }

    /// Truncated `β⃗·K⃗` on `dim` basis states.
    pub fn matrix(&self, k: HalfInt, dim: usize) -> DenseComplexMatrix {
        DenseComplexMatrix::combination(&truncated_su11_matrices(k, dim), self.betas())
    }
}

/// Region of parameter space a weight falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpectrumClass {
    /// `|τ₊| < 1`, `|τ₋| < 1`: every complex `λ` is an eigenvalue.
    ContinuousSU11,
    /// `|τ₊| < 1 ≤ |τ₋|`: `λ = (k+l)b`.
    DiscretePositive,
    /// `|τ₋| < 1 ≤ |τ₊|`: `λ = -(k+l)b`.
    DiscreteNegative,
    /// No normalizable eigenstates.
    Forbidden,
    /// `b = 0`, `|τ| < 1`: every complex `λ`.
    DegenerateContinuous,
    /// Pure `K₊`.
    DegenerateNoEigenstate,
    /// `β₊ = 0`, `b ≠ 0`, `|β₋/β₃| < 1`: `λ = (k+l)β₃`.
    BoundarySpecialCase,
}

impl SpectrumClass {
    pub fn is_admissible(self) -> bool {
        !matches!(self, SpectrumClass::Forbidden | SpectrumClass::DegenerateNoEigenstate)
    }

    /// Classes whose eigenvalues are labelled by `l = 0, 1, 2, …`.
    pub fn is_discrete(self) -> bool {
        matches!(
            self,
            SpectrumClass::DiscretePositive | SpectrumClass::DiscreteNegative | SpectrumClass::BoundarySpecialCase
        )
    }
}

enum Disk {
    Inside,
    Boundary,
    Outside,
}

fn disk(tau: Option<C64>) -> Disk {
    match tau {
        None => Disk::Outside,
        Some(t) => {
            let r = t.norm();
            if (r - 1.0).abs() <= BOUNDARY_TOL {
                Disk::Boundary
            } else if r < 1.0 {
                Disk::Inside
            } else {
                Disk::Outside
            }
        }
    }
}

/// Class of `w` and, for inadmissible weights, the violated condition.
pub fn classify_with_reason(w: &Su11Weight) -> Result<(SpectrumClass, Option<String>)> {
    if w.scale() == 0.0 {
        return Err(Error::ZeroWeight);
    }
    let boundary = "lies on the unit circle |τ| = 1: eigenstates are at best delta-normalizable";
    if w.b_is_zero() {
        if w.is_negligible(w.beta_plus) {
            return Ok((SpectrumClass::DegenerateNoEigenstate, Some("pure K₊ has no eigenstates".into())));
        }
        return Ok(match disk(w.tau_degenerate()) {
            Disk::Inside => (SpectrumClass::DegenerateContinuous, None),
            Disk::Boundary => (SpectrumClass::Forbidden, Some(format!("b = 0 and τ {boundary}"))),
            Disk::Outside => (SpectrumClass::Forbidden, Some("b = 0 and |τ| > 1".into())),
        });
    }
    if w.is_negligible(w.beta_plus) {
        let tau = Some(w.beta_minus / w.beta3);
        return Ok(match disk(tau) {
            Disk::Inside => (SpectrumClass::BoundarySpecialCase, None),
            Disk::Boundary => (SpectrumClass::Forbidden, Some(format!("β₊ = 0 and β₋/β₃ {boundary}"))),
            Disk::Outside => (SpectrumClass::Forbidden, Some("β₊ = 0 and |β₋/β₃| > 1".into())),
        });
    }
    let (p, m) = (disk(w.tau_plus), disk(w.tau_minus));
    Ok(match (p, m) {
        (Disk::Boundary, _) => (SpectrumClass::Forbidden, Some(format!("τ₊ {boundary}"))),
        (_, Disk::Boundary) => (SpectrumClass::Forbidden, Some(format!("τ₋ {boundary}"))),
        (Disk::Inside, Disk::Inside) => (SpectrumClass::ContinuousSU11, None),
        (Disk::Inside, Disk::Outside) => (SpectrumClass::DiscretePositive, None),
        (Disk::Outside, Disk::Inside) => (SpectrumClass::DiscreteNegative, None),
        (Disk::Outside, Disk::Outside) => {
            (SpectrumClass::Forbidden, Some("|τ₊| ≥ 1 and |τ₋| ≥ 1".into()))
        }
    })
}

pub fn classify(w: &Su11Weight) -> Result<SpectrumClass> {
    Ok(classify_with_reason(w)?.0)
}

/// Amplitudes over `|k,0⟩ … |k,N-1⟩` with a truncation certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Su11State {
    pub k: HalfInt,
    pub amplitudes: StateVector,
    /// Estimated `Σ_{n≥N} |c_n|²` relative to the retained norm.
    pub tail_bound: f64,
}

impl Su11State {
    pub fn truncation(&self) -> usize {
        self.amplitudes.len()
    }

    /// `Σ (k+n)|c_n|²` and the matching variance.
    pub fn k3_direct(&self) -> (f64, f64) {
        let norm = self.amplitudes.norm_sqr();
        let kv = self.k.value();
        let (mut s1, mut s2) = (0.0, 0.0);
        for (n, c) in self.amplitudes.iter().enumerate() {
            let p = c.norm_sqr() / norm;
            let e = kv + n as f64;
            s1 += e * p;
            s2 += e * e * p;
        }
        (s1, s2 - s1 * s1)
    }
}

pub(crate) fn check_rep(k: HalfInt) -> Result<()> {
    if k.twice() < 1 {
        return Err(Error::InvalidRep(format!("k = {k} must be a positive half-integer")));
    }
    Ok(())
}

/// Ratio-test estimate of the discarded tail relative to the kept norm:
/// `|c_last|² ρ/(1-ρ)` with `ρ` the largest of the last few `|c_{n+1}/c_n|²`.
pub fn tail_estimate(amps: &[C64]) -> f64 {
    let norm: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
    let last = match amps.iter().rposition(|c| c.norm_sqr() > 0.0) {
        None => return 0.0,
        Some(i) => i,
    };
    if last + 1 < amps.len() || norm == 0.0 {
        // the expansion terminated (or underflowed) inside the window
        return 0.0;
    }
    let start = last.saturating_sub(8);
    let mut rho = 0.0f64;
    for n in start..last {
        let (a, b) = (amps[n].norm_sqr(), amps[n + 1].norm_sqr());
        if a > 0.0 {
            rho = rho.max(b / a);
        }
    }
    if rho >= 1.0 {
        return f64::INFINITY;
    }
    amps[last].norm_sqr() * rho / (1.0 - rho) / norm
}

/// Builds amplitudes at `n0` basis states and doubles until the tail is
/// certified below [`TAIL_TOL`].
pub(crate) fn adaptive(n0: usize, build: impl Fn(usize) -> Result<Vec<C64>>) -> Result<(Vec<C64>, f64)> {
    let mut n = n0.max(8);
    loop {
        let amps = build(n)?;
        let tail = tail_estimate(&amps);
        if tail < TAIL_TOL {
            return Ok((amps, tail));
        }
        if n >= MAX_TRUNCATION {
            return Err(Error::TruncationInsufficient { n, tail });
        }
        n = (n * 2).min(MAX_TRUNCATION);
    }
}

/// `|k,ζ⟩`, `c_n = (1-|ζ|²)^k √(Γ(2k+n)/(n!Γ(2k))) ζⁿ`, on `dim` states.
pub fn coherent_state_su11(k: HalfInt, zeta: C64, dim: usize) -> Result<Su11State> {
    check_rep(k)?;
    if zeta.norm() >= 1.0 {
        return Err(Error::OutsideUnitDisk(zeta.norm()));
    }
    let two_k = k.twice() as f64;
    let mut amps = Vec::with_capacity(dim);
    let mut c = C64::new((1.0 - zeta.norm_sqr()).powf(k.value()), 0.0);
    for n in 0..dim {
        amps.push(c);
        let nf = n as f64;
        c = c * zeta * ((two_k + nf) / (nf + 1.0)).sqrt();
    }
    let tail_bound = tail_estimate(&amps);
    Ok(Su11State { k, amplitudes: StateVector::new(amps), tail_bound })
}

/// `⟨k,ζ₁|k,ζ₂⟩ = (1-|ζ₁|²)^k (1-|ζ₂|²)^k (1-ζ₁*ζ₂)^{-2k}`.
pub fn coherent_overlap_su11(k: HalfInt, z1: C64, z2: C64) -> C64 {
    let kv = k.value();
    (C64::new(1.0, 0.0) - z1.conj() * z2).powf(-2.0 * kv)
        * (1.0 - z1.norm_sqr()).powf(kv)
        * (1.0 - z2.norm_sqr()).powf(kv)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Su11Family {
    /// `(η, -i, 0)`, Schrödinger–Robertson for `(K₁, K₂)`.
    Generalized(C64),
    /// `(1, iγ, 0)`, Heisenberg for `(K₁, K₂)`.
    K1K2(f64),
    /// `(1, 0, iγ)`, Heisenberg for `(K₁, K₃)`.
    K1K3(f64),
    /// `(0, 1, iγ)`, Heisenberg for `(K₂, K₃)`.
    K2K3(f64),
}

impl Su11Family {
    pub fn operator_pair(&self) -> (usize, usize) {
        match self {
            Su11Family::Generalized(_) | Su11Family::K1K2(_) => (0, 1),
            Su11Family::K1K3(_) => (0, 2),
            Su11Family::K2K3(_) => (1, 2),
        }
    }

    pub fn is_ordinary(&self) -> bool {
        !matches!(self, Su11Family::Generalized(_))
    }
}

/// Family weight together with its class, which says whether (and how)
/// the family has normalizable members.
pub fn intelligent_weight_su11(family: Su11Family) -> (Su11Weight, SpectrumClass) {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let w = match family {
        Su11Family::Generalized(eta) => Su11Weight::new(eta, -i, zero),
        Su11Family::K1K2(g) => Su11Weight::new(one, i * g, zero),
        Su11Family::K1K3(g) => Su11Weight::new(one, zero, i * g),
        Su11Family::K2K3(g) => Su11Weight::new(zero, one, i * g),
    };
    let class = classify(&w).expect("family weights are nonzero");
    (w, class)
}
