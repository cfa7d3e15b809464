//! Null vectors and smallest singular vectors by inverse iteration.

use super::DenseComplexMatrix;
use crate::{C64, Error, Result, StateVector};

fn start_vector(n: usize) -> Vec<C64> {
    // fixed, generic, nowhere-vanishing start
    (0..n)
        .map(|i| C64::new(1.0 + 0.1 * (i as f64).sin(), 0.3 * (1.7 * i as f64).cos()))
        .collect()
}

fn normalize(v: &mut [C64]) -> f64 {
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for c in v.iter_mut() {
            *c /= norm;
        }
    }
    norm
}

fn residual(m: &DenseComplexMatrix, v: &[C64]) -> f64 {
    m.mul_vec(v).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Unit vector `v` with `‖Mv‖ ≤ 1e-8 ‖M‖`.
///
/// LU with partial pivoting; pivots that vanish to rounding are lifted to
/// a small floor and a few inverse-iteration sweeps pull the start vector
/// onto the null direction.
pub fn nullspace_vector(m: &DenseComplexMatrix) -> Result<StateVector> {
    let n = m.dim();
    let norm = m.norm();
    if norm == 0.0 {
        return Ok(StateVector::basis(n, 0));
    }
    let mut lu = m.lu();
    lu.regularize(1e-15 * norm);
    let mut v = start_vector(n);
    normalize(&mut v);
    for _ in 0..4 {
        v = lu.solve(&v);
        normalize(&mut v);
    }
    let r = residual(m, &v);
    if r > 1e-8 * norm || !r.is_finite() {
        return Err(Error::FullRank(r / norm));
    }
    Ok(StateVector::new(v).normalized())
}

/// Smallest singular value and its right singular vector, by inverse
/// iteration on `M†M`.
pub fn smallest_singular(m: &DenseComplexMatrix) -> (f64, StateVector) {
    let n = m.dim();
    let norm = m.norm();
    if norm == 0.0 {
        return (0.0, StateVector::basis(n, 0));
    }
    let mut lu = m.lu();
    lu.regularize(1e-15 * norm);
    let mut v = start_vector(n);
    normalize(&mut v);
    let mut sigma = residual(m, &v);
    for _ in 0..200 {
        let w = lu.solve_adjoint(&v);
        let mut next = lu.solve(&w);
        normalize(&mut next);
        let s = residual(m, &next);
        v = next;
        let settled = (sigma - s).abs() <= 1e-12 * sigma.max(1e-300);
        sigma = s;
        if settled {
            break;
        }
    }
    (sigma, StateVector::new(v).normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_accepts_any_vector() {
        let v = nullspace_vector(&DenseComplexMatrix::zeros(3)).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rank_one_deficient() {
        // rows (1,2,3), (2,4,6), (0,1,1) → null vector ∝ (1,1,-1)
        let r = |a: f64, b: f64, c: f64| vec![C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0)];
        let m = DenseComplexMatrix::from_rows(&[r(1.0, 2.0, 3.0), r(2.0, 4.0, 6.0), r(0.0, 1.0, 1.0)]).unwrap();
        let v = nullspace_vector(&m).unwrap();
        let want = StateVector::new(r(1.0, 1.0, -1.0)).normalized();
        assert!(v.fidelity(&want) > 1.0 - 1e-12);
        let (sigma, _) = smallest_singular(&m);
        assert!(sigma < 1e-12);
    }

    #[test]
    fn full_rank_rejected() {
        assert!(matches!(nullspace_vector(&DenseComplexMatrix::identity(3)), Err(Error::FullRank(_))));
        let (sigma, _) = smallest_singular(&DenseComplexMatrix::identity(3).scale(C64::new(0.5, 0.0)));
        assert!((sigma - 0.5).abs() < 1e-12);
    }
}
