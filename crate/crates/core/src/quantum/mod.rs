//! Finite-dimensional quantum mechanics over quasi-sets of systems.
//!
//! Hilbert spaces are `C^d`, observables are Hermitian matrices, dynamics is
//! a family of unitaries, and Borel sets of the real line are finite unions
//! of intervals.

mod borel;
mod linalg;
pub mod random;
mod structure;
mod wave;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub use borel::{BorelAlgebra, BorelSet, Interval, ENDPOINT_TOL};
pub use linalg::{
    born_probability, evolve, hermitian_deviation, norm_sq, spectral_decompose, unitary_deviation, with_phase,
    Eigenspace, CLUSTER_TOL, HERMITIAN_TOL, NORM_TOL, UNITARY_TOL,
};
pub use structure::{
    validate_qm_structure, NamedOperator, NamedState, QmCheck, QmReport, QmStructure, Space, Systems,
    CLASSICAL_SYSTEMS,
};
pub use wave::{position_wavefunction, Grid, SystemSigma, WAVE_NORM_TOL};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum QuantumError {
    #[error("matrix is not Hermitian (max |A - A*| entry {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not unitary (max |U*U - I| entry {0:e})")]
    NotUnitary(f64),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("set {0} is not in the Borel algebra")]
    NotInAlgebra(String),
    #[error("bad Borel set `{text}`: {reason}")]
    BadBorel { text: String, reason: String },
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
    #[error("system `{0}` is not mapped to a space")]
    UnmappedSystem(String),
    #[error("malformed QM file: {0}")]
    Format(String),
}

/// Builds a complex matrix from row-major `(re, im)` pairs.
pub fn cmatrix(rows: &[&[(f64, f64)]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| Complex64::new(rows[i][j].0, rows[i][j].1))
}

/// Builds a real diagonal matrix.
pub fn diag(values: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(
        values.len(),
        values.iter().map(|&v| Complex64::new(v, 0.0)),
    ))
}

pub fn cvector(entries: &[(f64, f64)]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&(re, im)| Complex64::new(re, im)))
}
