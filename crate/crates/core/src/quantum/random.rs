//! Random states and operators for property checks.

use num_complex::Complex64;
use rand::Rng;

use super::{CMatrix, CVector};

fn gaussian_ish<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| gaussian_ish(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let m = random_matrix(rng, d);
    (&m + m.adjoint()).scale(0.5)
}

/// Hermitian with a repeated eigenvalue: `U diag(λ) U†` where some `λ`
/// coincide.
pub fn random_degenerate_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let levels: Vec<f64> = (0..d).map(|_| f64::from(rng.random_range(-2i32..=2))).collect();
    let u = random_unitary(rng, d);
    let diag = CMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::new(levels[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let a = &u * diag * u.adjoint();
    (&a + a.adjoint()).scale(0.5)
}

pub fn random_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CVector {
    let v = CVector::from_fn(d, |_, _| gaussian_ish(rng));
    let n = v.norm();
    v.unscale(n)
}

/// The `Q` factor of a random complex matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    random_matrix(rng, d).qr().q()
}
