//! Plain complex amplitude vectors shared by both groups and the oracles.

use std::ops::{Deref, Index};

use serde::{Deserialize, Serialize};

use crate::C64;

/// Amplitudes over an orthonormal basis. Index 0 is the lowest basis state
/// (`|j,-j⟩` or `|k,0⟩`).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector(pub Vec<C64>);

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Self {
        StateVector(amplitudes)
    }

    /// `|n⟩` in a space of dimension `dim`.
    pub fn basis(dim: usize, n: usize) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[n] = C64::new(1.0, 0.0);
        StateVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨self|other⟩`, conjugating `self`. Shorter vectors are zero-padded.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Scales to unit norm and rotates the global phase so that the first
    /// amplitude with non-negligible magnitude is real and positive.
    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return self;
        }
        let max = self.0.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let phase = self
            .0
            .iter()
            .find(|c| c.norm() > 1e-12 * max)
            .map(|c| c.conj() / c.norm())
            .unwrap_or(C64::new(1.0, 0.0));
        let scale = phase / norm;
        for c in self.0.iter_mut() {
            *c *= scale;
        }
        self
    }

    /// `|⟨self|other⟩|` for unit vectors; insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm() / (self.norm() * other.norm())
    }

    pub fn into_inner(self) -> Vec<C64> {
        self.0
    }
}

impl Deref for StateVector {
    type Target = [C64];
    fn deref(&self) -> &[C64] {
        &self.0
    }
}

impl Index<usize> for StateVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl From<Vec<C64>> for StateVector {
    fn from(v: Vec<C64>) -> Self {
        StateVector(v)
    }
}
