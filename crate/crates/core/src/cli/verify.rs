//! Invariant suites behind `aeskit verify`.
//!
//! Each check compares a closed form against an independent computation
//! on a seeded random corpus. With `corrupt` set every closed-form value
//! and state is shifted by about `1e-3` first (a negative control).

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{
    char_poly_roots, eigen_residual, truncated_residual, multiset_distance, nullspace_vector, truncated_su11_ladders,
    uncertainty_audit,
};
use crate::specfun::{bessel_i, confluent_phi, jacobi_p, lagrange_g};
use crate::su11::{
    self, bg_overlap, bg_rep_eval_branch, bg_rep_series, bg_state, expansion_coefficients, intelligent_weight_su11,
    k3_moments, normalization_su11, solve_aes_su11, KummerBranch, SpectrumClass, Su11Family, Su11Label, Su11Weight,
};
use crate::su2::{self, intelligent_weight_su2, j3_moments, rep_matrices, solve_aes, Su2Family, Su2Weight};
use crate::{C64, HalfInt, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    All,
    Su2,
    Su11,
    Specfun,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

struct Ctx {
    rng: ChaCha8Rng,
    factor: f64,
}

impl Ctx {
    /// Relative and absolute shift, so exact zeros are disturbed too.
    fn c(&self, z: C64) -> C64 {
        z * self.factor + (self.factor - 1.0)
    }

    fn f(&self, x: f64) -> f64 {
        x * self.factor + (self.factor - 1.0)
    }

    fn state(&self, s: &StateVector) -> StateVector {
        let mut v = s.clone().into_inner();
        v[0] += self.factor - 1.0;
        StateVector::new(v)
    }

    fn complex(&mut self, r: f64) -> C64 {
        let m = r * self.rng.gen::<f64>().sqrt();
        C64::from_polar(m, self.rng.gen_range(0.0..std::f64::consts::TAU))
    }
}

/// `worst ≤ tol` as a named outcome.
fn outcome(name: &'static str, worst: f64, tol: f64) -> CheckOutcome {
    CheckOutcome { name, passed: worst <= tol, detail: format!("worst {worst:.3e} (tolerance {tol:.0e})") }
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn rising(a: C64, n: usize) -> C64 {
    (0..n).fold(C64::new(1.0, 0.0), |acc, i| acc * (a + i as f64))
}

fn fact(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

pub fn run_checks(scope: Scope, seed: u64, corrupt: bool) -> Vec<CheckOutcome> {
    let mut ctx = Ctx { rng: ChaCha8Rng::seed_from_u64(seed), factor: if corrupt { 1.0 + 1e-3 } else { 1.0 } };
    let mut out = Vec::new();
    if matches!(scope, Scope::All | Scope::Specfun) {
        out.push(generating_function(&mut ctx));
        out.push(vanishing_rule(&mut ctx));
        out.push(kummer_symmetry(&mut ctx));
        out.push(bessel_values(&ctx));
    }
    if matches!(scope, Scope::All | Scope::Su2) {
        out.push(su2_oracle(&mut ctx));
        out.push(su2_spectrum(&mut ctx));
        out.push(su2_normalization(&mut ctx));
        out.push(su2_moments(&mut ctx));
        out.push(su2_intelligent(&ctx));
    }
    if matches!(scope, Scope::All | Scope::Su11) {
        out.push(su11_residuals(&mut ctx));
        out.push(su11_normalization(&mut ctx));
        out.push(su11_moments(&mut ctx));
        out.push(su11_forbidden(&mut ctx));
        out.push(bg_checks(&mut ctx));
        out.push(bg_representation(&mut ctx));
    }
    out
}

fn generating_function(ctx: &mut Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..40 {
        let (al, be) = (ctx.complex(3.0), ctx.complex(3.0));
        let (u, v) = (ctx.complex(0.5), ctx.complex(0.5));
        for n in 0..=8 {
            // coefficient of ζⁿ in Σ(α)_s uˢ/s! · Σ(β)_t vᵗ/t!
            let series: C64 = (0..=n)
                .map(|s| rising(al, s) / fact(s) * u.powu(s as u32) * rising(be, n - s) / fact(n - s) * v.powu((n - s) as u32))
                .sum();
            let scale = 1.0 + series.norm();
            worst = worst.max((ctx.c(lagrange_g(n, al, be, u, v)) - series).norm() / scale);
        }
    }
    outcome("generating-function consistency", worst, 1e-12)
}

fn vanishing_rule(ctx: &mut Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    for twice_j in 1..=8i64 {
        let j = twice_j as f64 / 2.0;
        for step in 0..=twice_j {
            let m0 = -j + step as f64;
            for _ in 0..4 {
                let x = ctx.complex(4.0);
                for n in (twice_j as usize + 1)..(twice_j as usize + 4) {
                    let p = jacobi_p(n, C64::new(j + m0 - n as f64, 0.0), C64::new(j - m0 - n as f64, 0.0), x);
                    worst = worst.max(ctx.c(p).norm());
                }
            }
        }
    }
    outcome("Jacobi vanishing above n = 2j", worst, 1e-14)
}

fn kummer_symmetry(ctx: &mut Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let a = C64::new(ctx.rng.gen_range(-3.0..3.0), ctx.rng.gen_range(-1.0..1.0));
        let c = C64::new(ctx.rng.gen_range(0.5..4.0), 0.0);
        let x = ctx.complex(5.0);
        match (confluent_phi(a, c, x), confluent_phi(c - a, c, -x)) {
            (Ok(l), Ok(r)) => worst = worst.max(rel(x.exp() * r, ctx.c(l))),
            _ => worst = f64::INFINITY,
        }
    }
    outcome("Kummer transformation", worst, 1e-12)
}

fn bessel_values(ctx: &Ctx) -> CheckOutcome {
    let z = |x: f64| C64::new(x, 0.0);
    let mut worst = rel(ctx.c(bessel_i(0, z(2.0))), z(2.279_585_302_336_067_3));
    worst = worst.max((ctx.c(bessel_i(0, z(0.0))) - 1.0).norm());
    worst = worst.max(ctx.c(bessel_i(1, z(0.0))).norm());
    outcome("Bessel I reference values", worst, 1e-14)
}

fn random_su2_weight(ctx: &mut Ctx) -> Su2Weight {
    loop {
        let w = Su2Weight::new(ctx.complex(1.0), ctx.complex(1.0), ctx.complex(1.0));
        if w.b.norm() > 1e-6 {
            return w;
        }
    }
}

fn su2_oracle(ctx: &mut Ctx) -> CheckOutcome {
    let name = "SU(2) oracle equivalence";
    let (mut worst_res, mut worst_ovl) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let w = random_su2_weight(ctx);
        for twice in 1..=4 {
            let j = HalfInt::from_twice(twice);
            let m = w.matrix(j).expect("valid j");
            for m0 in j.ladder() {
                let sol = match solve_aes(j, &w, m0) {
                    Ok(s) => s,
                    Err(_) => return outcome(name, f64::INFINITY, 1e-10),
                };
                let psi = ctx.state(&sol.state.amplitudes);
                let res = eigen_residual(&m, sol.lambda, &psi);
                let ovl = nullspace_vector(&m.shift(sol.lambda)).map(|v| 1.0 - psi.fidelity(&v).sqrt()).unwrap_or(1.0);
                worst_res = worst_res.max(res);
                worst_ovl = worst_ovl.max(ovl);
            }
        }
    }
    CheckOutcome {
        name,
        passed: worst_res <= 1e-10 && worst_ovl <= 1e-8,
        detail: format!("worst residual {worst_res:.3e} (tolerance 1e-10), worst 1-overlap {worst_ovl:.3e} (tolerance 1e-8)"),
    }
}

fn su2_spectrum(ctx: &mut Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let w = random_su2_weight(ctx);
        for twice in 1..=6 {
            let j = HalfInt::from_twice(twice);
            let roots = char_poly_roots(&w.matrix(j).expect("valid j")).unwrap_or_default();
            let want: Vec<C64> = j.ladder().map(|m0| ctx.c(w.b * m0.value())).collect();
            worst = worst.max(if roots.len() == want.len() { multiset_distance(&roots, &want) } else { f64::INFINITY });
        }
    }
    outcome("SU(2) spectrum {m₀b}", worst, 1e-8)
}

fn su2_normalization(ctx: &mut Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let w = random_su2_weight(ctx);
        for twice in 1..=6 {
            let j = HalfInt::from_twice(twice);
            for m0 in j.ladder() {
                let closed = su2::normalization(j, &w, m0).unwrap_or(f64::NAN);
                let direct: f64 = su2::general_amplitudes(j, m0, &w).iter().map(|c| c.norm_sqr()).sum();
                worst = worst.max((ctx.f(closed) - direct).abs() / direct);
            }
        }
    }
    outcome("SU(2) normalization vs series", if worst.is_nan() { f64::INFINITY } else { worst }, 1e-9)
}

fn su2_moments(ctx: &mut Ctx) -> CheckOutcome {
    let mut weights: Vec<Su2Weight> = (0..10).map(|_| random_su2_weight(ctx)).collect();
    weights.push(intelligent_weight_su2(Su2Family::J1J3(0.4)));
    let mut worst = 0.0f64;
    for w in &weights {
        for twice in 1..=6 {
            let j = HalfInt::from_twice(twice);
            for m0 in j.ladder() {
                let (Ok((mean, var)), Ok(sol)) = (j3_moments(j, w, m0), solve_aes(j, w, m0)) else {
                    return outcome("SU(2) J₃ moments", f64::INFINITY, 1e-9);
                };
                let (dm, dv) = sol.state.j3_direct();
                let scale = 1.0 + dm.abs() + dv.abs();
                worst = worst.max((ctx.f(mean) - dm).abs().max((ctx.f(var) - dv).abs()) / scale);
            }
        }
    }
    outcome("SU(2) J₃ moments", worst, 1e-9)
}

fn su2_intelligent(ctx: &Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    let j = HalfInt::from_twice(3);
    let mats = rep_matrices(j).expect("valid j");
    let families = [
        Su2Family::Generalized(C64::new(0.5, 0.3)),
        Su2Family::J1J2(0.5),
        Su2Family::J1J3(-0.7),
        Su2Family::J2J3(1.3),
    ];
    for fam in families {
        let w = intelligent_weight_su2(fam);
        let (a, b) = fam.operator_pair();
        for m0 in j.ladder() {
            let Ok(sol) = solve_aes(j, &w, m0) else {
                return outcome("SU(2) intelligent-state saturation", f64::INFINITY, 1e-8);
            };
            let Ok(rep) = uncertainty_audit(&ctx.state(&sol.state.amplitudes), &mats[a], &mats[b]) else {
                return outcome("SU(2) intelligent-state saturation", f64::INFINITY, 1e-8);
            };
            worst = worst.max(rep.gap_sr.abs());
            if fam.is_ordinary() {
                worst = worst.max(rep.cov_ab.abs());
            }
        }
    }
    outcome("SU(2) intelligent-state saturation", worst, 1e-8)
}

/// Weight with prescribed `τ±`, or the `β₊ = 0` / `b = 0` special forms.
fn random_su11_case(ctx: &mut Ctx) -> (Su11Weight, Su11Label) {
    match ctx.rng.gen_range(0..5) {
        0 => {
            let w = Su11Weight::from_taus(ctx.complex(0.8), ctx.complex(0.8));
            (w, Su11Label::Lambda(ctx.complex(2.0)))
        }
        1 => {
            let tm = ctx.complex(0.8);
            let tp = C64::from_polar(ctx.rng.gen_range(1.25..3.0), ctx.rng.gen_range(0.0..std::f64::consts::TAU));
            (Su11Weight::from_taus(tp, tm), Su11Label::L(ctx.rng.gen_range(0..4)))
        }
        2 => {
            let tp = ctx.complex(0.8);
            let tm = C64::from_polar(ctx.rng.gen_range(1.25..3.0), ctx.rng.gen_range(0.0..std::f64::consts::TAU));
            (Su11Weight::from_taus(tp, tm), Su11Label::L(ctx.rng.gen_range(0..4)))
        }
        3 => {
            let b3 = C64::new(1.0, 0.0);
            let t = ctx.complex(0.8);
            (Su11Weight::new(t, t * C64::new(0.0, 1.0), b3), Su11Label::L(ctx.rng.gen_range(0..4)))
        }
        _ => {
            let z0 = ctx.complex(0.8);
            let one = C64::new(1.0, 0.0);
            let w = Su11Weight::new(one + z0 * z0, C64::new(0.0, -1.0) * (one - z0 * z0), -z0 * 2.0);
            (w, Su11Label::Lambda(ctx.complex(2.0)))
        }
    }
}

fn su11_residuals(ctx: &mut Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let (w, label) = random_su11_case(ctx);
        let k = HalfInt::from_twice(ctx.rng.gen_range(1..=4));
        let Ok(sol) = solve_aes_su11(k, &w, label, 64) else {
            return outcome("SU(1,1) eigen-residual", f64::INFINITY, 1e-8);
        };
        let m = w.matrix(k, sol.state.truncation());
        worst = worst.max(truncated_residual(&m, sol.lambda, &ctx.state(&sol.state.amplitudes)));
    }
    outcome("SU(1,1) eigen-residual", worst, 1e-8)
}

fn su11_normalization(ctx: &mut Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 30 {
        let (w, label) = random_su11_case(ctx);
        // real r in the continuous class
        let label = match (label, w.tau_plus) {
            (Su11Label::Lambda(_), Some(_)) if !w.b_is_zero() => Su11Label::Lambda(w.b * ctx.rng.gen_range(-2.0..2.0)),
            _ => label,
        };
        let k = HalfInt::from_twice(ctx.rng.gen_range(1..=4));
        let (Ok(closed), Ok(sol)) = (normalization_su11(k, &w, label), solve_aes_su11(k, &w, label, 256)) else {
            return outcome("SU(1,1) normalization vs series", f64::INFINITY, 1e-9);
        };
        // |c₀|² of the unnormalized expansion is 1 (Γ(2k)⁻¹ for b = 0)
        let c0 = if sol.class == SpectrumClass::DegenerateContinuous {
            1.0 / fact(k.twice() as usize - 1)
        } else {
            1.0
        };
        let lead = sol.state.amplitudes.iter().position(|c| c.norm() > 0.0).unwrap_or(0);
        let direct = c0 / sol.state.amplitudes[lead].norm_sqr();
        worst = worst.max((ctx.f(closed) - direct).abs() / direct);
        done += 1;
    }
    outcome("SU(1,1) normalization vs series", worst, 1e-9)
}

fn su11_moments(ctx: &mut Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    let mut cases: Vec<(Su11Weight, Su11Label)> = (0..20).map(|_| random_su11_case(ctx)).collect();
    cases.push((intelligent_weight_su11(Su11Family::K2K3(0.6)).0, Su11Label::L(2)));
    for (w, label) in cases {
        let k = HalfInt::from_twice(ctx.rng.gen_range(1..=4));
        let (Ok((mean, var)), Ok(sol)) = (k3_moments(k, &w, label), solve_aes_su11(k, &w, label, 256)) else {
            return outcome("SU(1,1) K₃ moments", f64::INFINITY, 1e-9);
        };
        let (dm, dv) = sol.state.k3_direct();
        let scale = 1.0 + dm.abs() + dv.abs();
        worst = worst.max((ctx.f(mean) - dm).abs().max((ctx.f(var) - dv).abs()) / scale);
    }
    outcome("SU(1,1) K₃ moments", worst, 1e-9)
}

const FORBIDDEN: &str = "SU(1,1) forbidden divergence";

/// No closed form is involved, so corruption leaves this check alone.
fn su11_forbidden(ctx: &mut Ctx) -> CheckOutcome {
    // the expansion of a forbidden weight grows: late term ratios exceed 1
    let mut worst_ratio = f64::INFINITY;
    for _ in 0..20 {
        let tp = C64::from_polar(ctx.rng.gen_range(1.1..2.0), ctx.rng.gen_range(0.0..std::f64::consts::TAU));
        let tm = C64::from_polar(ctx.rng.gen_range(1.1..2.0), ctx.rng.gen_range(0.0..std::f64::consts::TAU));
        let w = Su11Weight::from_taus(tp, tm);
        if su11::classify(&w) != Ok(SpectrumClass::Forbidden) {
            return CheckOutcome { name: FORBIDDEN, passed: false, detail: "misclassified".into() };
        }
        let r = C64::new(ctx.rng.gen_range(-2.0..2.0), ctx.rng.gen_range(-1.0..1.0));
        let c = expansion_coefficients(HalfInt::from_twice(2), tp, tm, r, 256);
        let tail: f64 = c[192..].iter().map(|x| x.norm_sqr()).sum();
        let head: f64 = c[128..192].iter().map(|x| x.norm_sqr()).sum();
        worst_ratio = worst_ratio.min(tail / head);
    }
    CheckOutcome {
        name: FORBIDDEN,
        passed: worst_ratio > 1.0,
        detail: format!("smallest late/early block ratio {worst_ratio:.3e}"),
    }
}

fn bg_checks(ctx: &mut Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let k = HalfInt::from_twice(ctx.rng.gen_range(1..=4));
        let (z1, z2) = (ctx.complex(5.0), ctx.complex(5.0));
        let (Ok(a), Ok(b)) = (bg_state(k, z1, 64), bg_state(k, z2, 64)) else {
            return outcome("Barut–Girardello states", f64::INFINITY, 1e-10);
        };
        let (_, km, _) = truncated_su11_ladders(k, a.state.truncation());
        worst = worst.max(eigen_residual(&km, z1, &ctx.state(&a.state.amplitudes)));
        let direct = a.state.amplitudes.inner(&b.state.amplitudes);
        worst = worst.max((ctx.c(bg_overlap(k, z1, z2)) - direct).norm());
    }
    outcome("Barut–Girardello states", worst, 1e-10)
}

fn bg_representation(ctx: &mut Ctx) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let (w, label) = random_su11_case(ctx);
        let k = HalfInt::from_twice(ctx.rng.gen_range(1..=4));
        let Ok(sol) = solve_aes_su11(k, &w, label, 256) else {
            return outcome("BG representation", f64::INFINITY, 1e-9);
        };
        for _ in 0..3 {
            let z = ctx.complex(2.0);
            let series = bg_rep_series(&sol.state, z);
            let (Ok(up), Ok(lo)) = (
                bg_rep_eval_branch(k, &w, label, z, KummerBranch::Upper),
                bg_rep_eval_branch(k, &w, label, z, KummerBranch::Lower),
            ) else {
                return outcome("BG representation", f64::INFINITY, 1e-9);
            };
            let scale = 1.0 + series.norm();
            worst = worst.max((ctx.c(up) - series).norm() / scale).max((up - lo).norm() / scale);
        }
    }
    outcome("BG representation", worst, 1e-9)
}
