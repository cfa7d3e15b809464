//! Brute-force cross-checks: dense matrices, characteristic-polynomial
//! eigenvalues, null vectors, uncertainty audits.

mod matrix;
mod nullspace;
mod quadrature;
mod roots;
mod uncertainty;

pub use matrix::{DenseComplexMatrix, Lu};
pub use nullspace::{nullspace_vector, smallest_singular};
pub use quadrature::gauss_legendre;
pub use roots::{char_poly, char_poly_roots, multiset_distance};
pub use uncertainty::{uncertainty_audit, UncertaintyReport};

use crate::{C64, HalfInt, StateVector};

/// `‖(M - λ)ψ‖ / ‖ψ‖`.
pub fn eigen_residual(m: &DenseComplexMatrix, lambda: C64, psi: &StateVector) -> f64 {
    let mv = m.mul_vec(psi);
    let r: f64 = mv.iter().zip(psi.iter()).map(|(a, b)| (a - lambda * b).norm_sqr()).sum();
    r.sqrt() / psi.norm()
}

/// [`eigen_residual`] on a truncated SU(1,1) block, leaving out the top two
/// rows where the dropped `K₊` step makes the block differ from the full
/// operator. What those rows would see is bounded by the state's tail.
pub fn truncated_residual(m: &DenseComplexMatrix, lambda: C64, psi: &StateVector) -> f64 {
    let mv = m.mul_vec(psi);
    let keep = psi.len().saturating_sub(2);
    let r: f64 = mv.iter().zip(psi.iter()).take(keep).map(|(a, b)| (a - lambda * b).norm_sqr()).sum();
    r.sqrt() / psi.norm()
}

/// `K₁, K₂, K₃` on the first `dim` states `|k,0⟩ … |k,dim-1⟩`.
///
/// `K₊|k,n⟩ = √((n+1)(2k+n)) |k,n+1⟩` with the step out of the block
/// dropped; `K₋ = K₊†`, `K₃ = k + n`.
pub fn truncated_su11_matrices(k: HalfInt, dim: usize) -> [DenseComplexMatrix; 3] {
    let (kp, km, k3) = truncated_su11_ladders(k, dim);
    ladder_to_cartesian(&kp, &km, k3)
}

/// `(K₊, K₋, K₃)` on the truncated block.
pub fn truncated_su11_ladders(k: HalfInt, dim: usize) -> (DenseComplexMatrix, DenseComplexMatrix, DenseComplexMatrix) {
    let two_k = k.twice() as f64;
    let mut kp = DenseComplexMatrix::zeros(dim);
    let mut k3 = DenseComplexMatrix::zeros(dim);
    for n in 0..dim {
        k3[(n, n)] = C64::new(k.value() + n as f64, 0.0);
        if n + 1 < dim {
            kp[(n + 1, n)] = C64::new(((n as f64 + 1.0) * (two_k + n as f64)).sqrt(), 0.0);
        }
    }
    let km = kp.adjoint();
    (kp, km, k3)
}

/// `X₁ = (X₊+X₋)/2`, `X₂ = (X₊-X₋)/(2i)`.
pub fn ladder_to_cartesian(xp: &DenseComplexMatrix, xm: &DenseComplexMatrix, x3: DenseComplexMatrix) -> [DenseComplexMatrix; 3] {
    let x1 = (xp + xm).scale(C64::new(0.5, 0.0));
    let x2 = (xp - xm).scale(C64::new(0.0, -0.5));
    [x1, x2, x3]
}
