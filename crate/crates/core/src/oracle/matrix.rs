//! Small dense complex matrices and an LU factorization.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::{C64, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseComplexMatrix {
    n: usize,
    data: Vec<C64>,
}

impl DenseComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseComplexMatrix { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Row-major construction; `rows` must be square.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows must form a square matrix".into()));
        }
        Ok(DenseComplexMatrix { n, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        DenseComplexMatrix { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// `self - λI`.
    pub fn shift(&self, lambda: C64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m[(i, i)] -= lambda;
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| {
                let row = &self.data[i * self.n..(i + 1) * self.n];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `max |M - M†|` entrywise.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `β₁X₁ + β₂X₂ + β₃X₃`.
    pub fn combination(mats: &[DenseComplexMatrix; 3], beta: [C64; 3]) -> Self {
        &(&mats[0].scale(beta[0]) + &mats[1].scale(beta[1])) + &mats[2].scale(beta[2])
    }

    pub fn lu(&self) -> Lu {
        Lu::factor(self)
    }
}

impl Index<(usize, usize)> for DenseComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for DenseComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn add(self, rhs: Self) -> DenseComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        DenseComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn sub(self, rhs: Self) -> DenseComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        DenseComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn mul(self, rhs: Self) -> DenseComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = DenseComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

/// `PA = LU` with partial pivoting. Exactly zero pivots are kept; callers
/// decide how to treat singularity.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Vec<C64>,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    fn factor(m: &DenseComplexMatrix) -> Self {
        let n = m.n;
        let mut lu = m.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| lu[a * n + col].norm().total_cmp(&lu[b * n + col].norm()))
                .unwrap_or(col);
            if pivot != col {
                for j in 0..n {
                    lu.swap(pivot * n + j, col * n + j);
                }
                perm.swap(pivot, col);
                swaps += 1;
            }
            let p = lu[col * n + col];
            if p.norm_sqr() == 0.0 {
                continue;
            }
            for row in col + 1..n {
                let f = lu[row * n + col] / p;
                lu[row * n + col] = f;
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in col + 1..n {
                    let u = lu[col * n + j];
                    lu[row * n + j] -= f * u;
                }
            }
        }
        Lu { n, lu, perm, swaps }
    }

    pub fn pivots(&self) -> Vec<C64> {
        (0..self.n).map(|i| self.lu[i * self.n + i]).collect()
    }

    pub fn det(&self) -> C64 {
        let prod: C64 = self.pivots().iter().product();
        if self.swaps % 2 == 0 { prod } else { -prod }
    }

    /// Replaces pivots smaller than `floor` in magnitude by `floor`, which
    /// turns the factorization into a usable inverse-iteration operator.
    pub fn regularize(&mut self, floor: f64) {
        for i in 0..self.n {
            let p = &mut self.lu[i * self.n + i];
            if p.norm() < floor {
                *p = if p.norm() == 0.0 { C64::new(floor, 0.0) } else { *p / p.norm() * floor };
            }
        }
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.n;
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        x
    }

    /// Solves `A† x = b`.
    pub fn solve_adjoint(&self, b: &[C64]) -> Vec<C64> {
        // A = Pᵀ L U, so A† = U† L† P and A† x = b needs U† y = b, L† w = y, x = Pᵀ w.
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut acc = y[i];
            for j in 0..i {
                acc -= self.lu[j * n + i].conj() * y[j];
            }
            y[i] = acc / self.lu[i * n + i].conj();
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in i + 1..n {
                acc -= self.lu[j * n + i].conj() * y[j];
            }
            y[i] = acc;
        }
        let mut x = vec![C64::new(0.0, 0.0); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = y[i];
        }
        x
    }
}
