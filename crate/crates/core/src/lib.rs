//! Algebra eigenstates of SU(2) and SU(1,1).
//!
//! An algebra eigenstate (AES) is an eigenvector of a complex combination
//! `β₁X₁ + β₂X₂ + β₃X₃` of the group generators. This crate builds those
//! states in closed form over the standard orthonormal bases (`|j,m⟩` for
//! SU(2), the discrete series `|k,n⟩` for SU(1,1)), classifies which
//! eigenvalues are admissible, evaluates the normalization factor and the
//! first two moments of `J₃`/`K₃` exactly, and checks every closed form
//! against brute-force matrix oracles.
//!
//! Layout:
//! - [`specfun`]: Jacobi/Lagrange/Laguerre polynomials, Gauss and Kummer
//!   series, modified Bessel `I_ν`.
//! - [`su2`]: coherent states, general AES, normalization, `J₃` moments,
//!   intelligent-state weights.
//! - [`su11`]: parameter-space classification, unit-disk and
//!   Barut–Girardello constructions, `K₃` moments, intelligent states.
//! - [`oracle`]: dense matrices, characteristic-polynomial roots, null
//!   vectors, uncertainty audits.
//! - [`cli`]: the `aeskit` command-line front end.

pub mod cli;
pub mod error;
pub mod half;
pub mod oracle;
pub mod specfun;
pub mod state;
pub mod su11;
pub mod su2;

pub use error::{Error, Result};
pub use half::HalfInt;
pub use num_complex::Complex64 as C64;
pub use state::StateVector;

/// Magnitudes below `ZERO_REL * max|β|` are treated as exact zeros when
/// dispatching between the general solution and its special cases.
pub const ZERO_REL: f64 = 1e-13;
