//! Robertson and Schrödinger–Robertson uncertainty audits.

use serde::Serialize;

use super::DenseComplexMatrix;
use crate::{C64, Error, Result, StateVector};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub mean_a: f64,
    pub mean_b: f64,
    pub var_a: f64,
    pub var_b: f64,
    pub cov_ab: f64,
    /// `⟨[A,B]⟩`, purely imaginary for Hermitian `A`, `B`.
    pub commutator: C64,
    pub lhs: f64,
    /// `¼|⟨[A,B]⟩|² + σ_AB²`
    pub rhs_sr: f64,
    /// `¼|⟨[A,B]⟩|²`
    pub rhs_h: f64,
    pub gap_sr: f64,
    pub gap_h: f64,
}

/// Moments of `A` and `B` in `state` by direct quadratic forms. Only
/// matrix-vector products are formed, so truncated SU(1,1) blocks of a few
/// hundred rows stay cheap.
pub fn uncertainty_audit(state: &StateVector, a: &DenseComplexMatrix, b: &DenseComplexMatrix) -> Result<UncertaintyReport> {
    for m in [a, b] {
        let defect = m.hermitian_defect();
        if defect > 1e-10 {
            return Err(Error::NotHermitian(defect));
        }
        if m.dim() != state.len() {
            return Err(Error::Dimension(format!("operator {} vs state {}", m.dim(), state.len())));
        }
    }
    let psi = state.clone().normalized();
    let a_psi = StateVector::new(a.mul_vec(&psi));
    let b_psi = StateVector::new(b.mul_vec(&psi));
    let mean_a = psi.inner(&a_psi).re;
    let mean_b = psi.inner(&b_psi).re;
    let var_a = a_psi.norm_sqr() - mean_a * mean_a;
    let var_b = b_psi.norm_sqr() - mean_b * mean_b;
    let ab = a_psi.inner(&b_psi);
    let cov_ab = ab.re - mean_a * mean_b;
    let commutator = C64::new(0.0, 2.0 * ab.im);
    let lhs = var_a * var_b;
    let rhs_h = commutator.norm_sqr() / 4.0;
    let rhs_sr = rhs_h + cov_ab * cov_ab;
    Ok(UncertaintyReport {
        mean_a,
        mean_b,
        var_a,
        var_b,
        cov_ab,
        commutator,
        lhs,
        rhs_sr,
        rhs_h,
        gap_sr: lhs - rhs_sr,
        gap_h: lhs - rhs_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli() -> [DenseComplexMatrix; 3] {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(0.5, 0.0);
        let i = C64::new(0.0, 0.5);
        [
            DenseComplexMatrix::from_rows(&[vec![z, o], vec![o, z]]).unwrap(),
            DenseComplexMatrix::from_rows(&[vec![z, -i], vec![i, z]]).unwrap(),
            DenseComplexMatrix::from_rows(&[vec![-o, z], vec![z, o]]).unwrap(),
        ]
    }

    #[test]
    fn spin_half_saturates() {
        // every spin-½ pure state saturates Schrödinger–Robertson
        let [s1, s2, _] = pauli();
        let psi = StateVector::new(vec![C64::new(0.6, 0.1), C64::new(-0.3, 0.7)]);
        let rep = uncertainty_audit(&psi, &s1, &s2).unwrap();
        assert!(rep.gap_sr.abs() < 1e-14);
        assert!(rep.gap_h >= rep.gap_sr - 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let [s1, _, _] = pauli();
        let bad = s1.scale(C64::new(0.0, 1.0));
        let psi = StateVector::basis(2, 0);
        assert!(matches!(uncertainty_audit(&psi, &bad, &s1), Err(Error::NotHermitian(_))));
    }
}
