//! Eigenvalues from the characteristic polynomial.

use super::DenseComplexMatrix;
use crate::{C64, Error, Result};

const MAX_ITER: usize = 10_000;

/// Coefficients `c_0..c_n` of `det(λI - M) = Σ c_i λ^i` (monic, `c_n = 1`)
/// by the Faddeev–LeVerrier recursion.
pub fn char_poly(m: &DenseComplexMatrix) -> Vec<C64> {
    let n = m.dim();
    let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
    coeffs[n] = C64::new(1.0, 0.0);
    let ident = DenseComplexMatrix::identity(n);
    let mut mk = DenseComplexMatrix::zeros(n);
    for k in 1..=n {
        // M_k = M M_{k-1} + c_{n-k+1} I
        mk = &(m * &mk) + &ident.scale(coeffs[n - k + 1]);
        coeffs[n - k] = -(m * &mk).trace() / k as f64;
    }
    coeffs
}

fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// All eigenvalues of `m` with multiplicity.
///
/// Durand–Kerner on the Faddeev–LeVerrier polynomial, then each root is
/// polished by Newton steps on `det(M - λI)` using
/// `d/dλ ln det(M - λI) = -tr((M - λI)⁻¹)`.
pub fn char_poly_roots(m: &DenseComplexMatrix) -> Result<Vec<C64>> {
    let n = m.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let coeffs = char_poly(m);
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n).map(|i| seed.powu(i as u32) * radius.min(2.0).max(0.5)).collect();
    let scale = radius.max(1.0);
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = C64::new(1e-300, 0.0);
            }
            let step = horner(&coeffs, roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-14 * scale {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_ITER));
    }
    let norm = m.norm().max(f64::MIN_POSITIVE);
    for root in roots.iter_mut() {
        *root = polish(m, *root, norm);
    }
    Ok(roots)
}

fn polish(m: &DenseComplexMatrix, mut lambda: C64, norm: f64) -> C64 {
    let n = m.dim();
    for _ in 0..3 {
        let lu = m.shift(lambda).lu();
        let pivots = lu.pivots();
        if pivots.iter().any(|p| p.norm() <= 1e-14 * norm) {
            break;
        }
        let mut trace = C64::new(0.0, 0.0);
        for i in 0..n {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[i] = C64::new(1.0, 0.0);
            trace += lu.solve(&e)[i];
        }
        if trace.norm() == 0.0 {
            break;
        }
        let step = trace.inv();
        if !step.re.is_finite() || !step.im.is_finite() || step.norm() > 1e-6 * norm {
            break;
        }
        lambda += step;
        if step.norm() <= 1e-15 * norm {
            break;
        }
    }
    lambda
}

/// Multiset comparison: greedy nearest matching, returns the worst distance.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (idx, d) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("equal lengths");
        used[idx] = true;
        worst = worst.max(d);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[f64]) -> DenseComplexMatrix {
        DenseComplexMatrix::from_fn(v.len(), |i, j| if i == j { C64::new(v[i], 0.0) } else { C64::new(0.0, 0.0) })
    }

    #[test]
    fn diagonal_spectrum() {
        let roots = char_poly_roots(&diag(&[-1.0, 0.0, 1.0])).unwrap();
        let want = [C64::new(-1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        assert!(multiset_distance(&roots, &want) < 1e-12);
    }

    #[test]
    fn two_by_two_analytic() {
        // [[a, b], [c, d]] → (a+d)/2 ± √((a-d)²/4 + bc)
        let (a, b, c, d) = (C64::new(0.3, 1.0), C64::new(-2.0, 0.5), C64::new(1.5, 0.0), C64::new(0.0, -0.7));
        let m = DenseComplexMatrix::from_rows(&[vec![a, b], vec![c, d]]).unwrap();
        let mid = (a + d) / 2.0;
        let disc = ((a - d) * (a - d) / 4.0 + b * c).sqrt();
        let roots = char_poly_roots(&m).unwrap();
        assert!(multiset_distance(&roots, &[mid + disc, mid - disc]) < 1e-12);
    }

    #[test]
    fn nilpotent_block() {
        let m = DenseComplexMatrix::from_fn(3, |i, j| if j == i + 1 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
        let roots = char_poly_roots(&m).unwrap();
        assert!(roots.iter().all(|r| r.norm() < 1e-4));
    }
}
