use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid representation label: {0}")]
    InvalidRep(String),

    #[error("quantum number {m0} outside -{j}..{j}")]
    InvalidQuantumNumber { j: String, m0: String },

    #[error("weight vector is identically zero")]
    ZeroWeight,

    #[error("closed form unavailable: {0}")]
    BranchUnavailable(String),

    #[error("series did not converge after {terms} terms")]
    NonConvergent { terms: usize },

    #[error("invalid special-function parameter: {0}")]
    InvalidParameter(String),

    #[error("label does not match spectrum class: {0}")]
    ClassMismatch(String),

    #[error("forbidden region: {0}")]
    ForbiddenRegion(String),

    #[error("no eigenstate: {0}")]
    NoEigenstate(String),

    #[error("truncation insufficient: tail bound {tail:e} at N = {n}")]
    TruncationInsufficient { n: usize, tail: f64 },

    #[error("|ζ| = {0} is outside the unit disk")]
    OutsideUnitDisk(f64),

    #[error("root iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("matrix has full numerical rank (smallest pivot {0:e})")]
    FullRank(f64),

    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),
}
