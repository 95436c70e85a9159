//! Wave functions on a one-dimensional spatial grid at a fixed time.

use num_complex::Complex64;
use serde::Serialize;

use super::linalg::{norm_sq, unitary_deviation, UNITARY_TOL};
use super::{BorelSet, CMatrix, CVector, QuantumError};

pub const WAVE_NORM_TOL: f64 = 1e-10;

/// Grid points `x0, x0 + dx, ...` observed at time `t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub points: usize,
    pub x0: f64,
    pub dx: f64,
    pub t: f64,
}

impl Grid {
    pub fn new(points: usize, x0: f64, dx: f64, t: f64) -> Self {
        assert!(dx > 0.0, "grid spacing must be positive");
        Grid { points, x0, dx, t }
    }

    /// Unit spacing starting at 0, at time 0.
    pub fn unit(points: usize) -> Self {
        Grid::new(points, 0.0, 1.0, 0.0)
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x0 + self.dx * j as f64
    }

    /// The position observable: `diag(x_0, ..., x_{n-1})`.
    pub fn position_operator(&self) -> CMatrix {
        CMatrix::from_fn(self.points, self.points, |i, j| {
            if i == j {
                Complex64::new(self.x(i), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }
}

/// `ψ(x, t) = ⟨x|ψ⟩ / √dx`, the coefficients of `ψ` in the position
/// eigenbasis scaled to a density so that `Σ |ψ(x)|² dx = ⟨ψ|ψ⟩`.
///
/// `psi` holds coordinates in the orthonormal basis whose vectors are the
/// columns of `basis`, written in the grid basis; `None` means `psi` is
/// already in the grid basis.
pub fn position_wavefunction(psi: &CVector, basis: Option<&CMatrix>, grid: &Grid) -> Result<CVector, QuantumError> {
    if psi.len() != grid.points {
        return Err(QuantumError::DimensionMismatch {
            expected: grid.points,
            found: psi.len(),
        });
    }
    let in_grid = match basis {
        None => psi.clone(),
        Some(b) => {
            if b.nrows() != grid.points || b.ncols() != grid.points {
                return Err(QuantumError::DimensionMismatch {
                    expected: grid.points,
                    found: b.nrows().max(b.ncols()),
                });
            }
            let dev = unitary_deviation(b);
            if dev > UNITARY_TOL {
                return Err(QuantumError::NotUnitary(dev));
            }
            b * psi
        }
    };
    Ok(in_grid.unscale(grid.dx.sqrt()))
}

/// What a single system carries: a grid standing in for space and time, its
/// wave function there, and a region `Δ` of interest.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSigma {
    grid: Grid,
    psi: CVector,
    delta: BorelSet,
}

impl SystemSigma {
    /// Requires `Σ |ψ(x)|² dx = 1` within [`WAVE_NORM_TOL`].
    pub fn new(grid: Grid, psi: CVector, delta: BorelSet) -> Result<Self, QuantumError> {
        if psi.len() != grid.points {
            return Err(QuantumError::DimensionMismatch {
                expected: grid.points,
                found: psi.len(),
            });
        }
        let total = norm_sq(&psi) * grid.dx;
        if (total - 1.0).abs() > WAVE_NORM_TOL {
            return Err(QuantumError::NotNormalized(total));
        }
        Ok(SystemSigma { grid, psi, delta })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn psi(&self) -> &CVector {
        &self.psi
    }

    pub fn delta(&self) -> &BorelSet {
        &self.delta
    }

    /// Probability of finding the system at a grid point inside `Δ`.
    pub fn position_probability(&self) -> f64 {
        (0..self.grid.points)
            .filter(|&j| self.delta.contains(self.grid.x(j)))
            .map(|j| self.psi[j].norm_sqr() * self.grid.dx)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::born_probability;
    use crate::quantum::random::{random_state, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grid_basis_is_identity_at_unit_spacing() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = random_state(&mut rng, 5);
        assert_eq!(position_wavefunction(&psi, None, &Grid::unit(5)).unwrap(), psi);
        let e2 = CVector::from_fn(5, |i, _| Complex64::new(if i == 2 { 1.0 } else { 0.0 }, 0.0));
        assert_eq!(position_wavefunction(&e2, None, &Grid::unit(5)).unwrap(), e2);
    }

    #[test]
    fn norm_is_preserved_by_basis_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=6 {
            let grid = Grid::new(n, -1.0, 0.25, 0.5);
            let psi = random_state(&mut rng, n);
            let b = random_unitary(&mut rng, n);
            let w = position_wavefunction(&psi, Some(&b), &grid).unwrap();
            assert!((norm_sq(&w) * grid.dx - norm_sq(&psi)).abs() < 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let psi = CVector::zeros(3);
        assert!(matches!(
            position_wavefunction(&psi, None, &Grid::unit(4)),
            Err(QuantumError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn region_probability_is_born_rule_for_position() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let grid = Grid::new(6, 0.0, 0.5, 0.0);
        let psi = random_state(&mut rng, 6);
        let delta = BorelSet::parse("[0.5, 1.5]").unwrap();
        let w = position_wavefunction(&psi, None, &grid).unwrap();
        let sigma = SystemSigma::new(grid.clone(), w, delta.clone()).unwrap();
        let p = born_probability(&psi, &grid.position_operator(), &delta).unwrap();
        assert!((sigma.position_probability() - p).abs() < 1e-12);
    }

    #[test]
    fn sigma_requires_normalization() {
        let grid = Grid::new(2, 0.0, 0.5, 0.0);
        let psi = CVector::from_element(2, Complex64::new(1.0, 0.0));
        assert!(SystemSigma::new(grid.clone(), psi.clone(), BorelSet::real_line()).is_ok());
        assert!(SystemSigma::new(Grid::unit(2), psi, BorelSet::real_line()).is_err());
    }
}
