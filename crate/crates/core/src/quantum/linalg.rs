use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::{BorelSet, CMatrix, CVector, QuantumError};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const UNITARY_TOL: f64 = 1e-12;
/// Eigenvalues closer than this are one eigenvalue.
pub const CLUSTER_TOL: f64 = 1e-9;
pub const NORM_TOL: f64 = 1e-10;

fn check_square(a: &CMatrix) -> Result<usize, QuantumError> {
    if a.nrows() != a.ncols() {
        return Err(QuantumError::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(a.nrows())
}

/// Largest entry of `|A - A†|`.
pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    (a - a.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry of `|U†U - I|`.
pub fn unitary_deviation(u: &CMatrix) -> f64 {
    let id = CMatrix::identity(u.nrows(), u.ncols());
    (u.adjoint() * u - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn norm_sq(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// An eigenvalue with the orthogonal projector onto its eigenspace.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub value: f64,
    pub projector: CMatrix,
    pub multiplicity: usize,
}

/// Eigenvalues ascending, each with its eigenspace projector. Eigenvalues
/// within [`CLUSTER_TOL`] of their neighbour are merged into one eigenspace
/// whose value is the cluster mean.
pub fn spectral_decompose(a: &CMatrix) -> Result<Vec<Eigenspace>, QuantumError> {
    let n = check_square(a)?;
    let dev = hermitian_deviation(a);
    if dev > HERMITIAN_TOL {
        return Err(QuantumError::NotHermitian(dev));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // Symmetrize away rounding before handing to the solver.
    let h = (a + a.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let mut out: Vec<(Vec<f64>, CMatrix)> = Vec::new();
    for i in order {
        let lambda = eig.eigenvalues[i];
        let v = eig.eigenvectors.column(i);
        let p = v * v.adjoint();
        match out.last_mut() {
            Some((vals, proj)) if lambda - vals.last().unwrap() <= CLUSTER_TOL => {
                vals.push(lambda);
                *proj += p;
            }
            _ => out.push((vec![lambda], p)),
        }
    }
    Ok(out
        .into_iter()
        .map(|(vals, projector)| Eigenspace {
            value: vals.iter().sum::<f64>() / vals.len() as f64,
            multiplicity: vals.len(),
            projector,
        })
        .collect())
}

/// `P(ψ, A, Δ)`: the probability that measuring `A` in state `ψ` yields a
/// value in `Δ`, that is `Σ ‖P_λ ψ‖²` over eigenvalues `λ ∈ Δ`.
pub fn born_probability(psi: &CVector, a: &CMatrix, delta: &BorelSet) -> Result<f64, QuantumError> {
    let n = check_square(a)?;
    if psi.len() != n {
        return Err(QuantumError::DimensionMismatch {
            expected: n,
            found: psi.len(),
        });
    }
    let norm = norm_sq(psi);
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(QuantumError::NotNormalized(norm));
    }
    let p: f64 = spectral_decompose(a)?
        .iter()
        .filter(|e| delta.contains(e.value))
        .map(|e| norm_sq(&(&e.projector * psi)))
        .sum();
    Ok(p.clamp(0.0, 1.0))
}

/// `Uψ`, after checking that `U` is unitary.
pub fn evolve(psi: &CVector, u: &CMatrix) -> Result<CVector, QuantumError> {
    let n = check_square(u)?;
    if psi.len() != n {
        return Err(QuantumError::DimensionMismatch {
            expected: n,
            found: psi.len(),
        });
    }
    let dev = unitary_deviation(u);
    if dev > UNITARY_TOL {
        return Err(QuantumError::NotUnitary(dev));
    }
    Ok(u * psi)
}

/// `e^{iθ} ψ`.
pub fn with_phase(psi: &CVector, theta: f64) -> CVector {
    psi * Complex64::from_polar(1.0, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::random::{random_hermitian, random_state, random_unitary};
    use crate::quantum::{cmatrix, cvector, diag};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn max_entry(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn pauli_z() {
        let es = spectral_decompose(&diag(&[1.0, -1.0])).unwrap();
        assert_eq!(es.len(), 2);
        assert!((es[0].value + 1.0).abs() < 1e-12 && (es[1].value - 1.0).abs() < 1e-12);
        assert!(max_entry(&(&es[0].projector - diag(&[0.0, 1.0]))) < 1e-12);
        assert!(max_entry(&(&es[1].projector - diag(&[1.0, 0.0]))) < 1e-12);
    }

    #[test]
    fn identity_is_one_eigenspace() {
        let es = spectral_decompose(&CMatrix::identity(3, 3)).unwrap();
        assert_eq!(es.len(), 1);
        assert_eq!(es[0].multiplicity, 3);
        assert!(max_entry(&(&es[0].projector - CMatrix::identity(3, 3))) < 1e-12);
    }

    #[test]
    fn projectors_are_orthogonal_and_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=6 {
            let a = random_hermitian(&mut rng, d);
            let es = spectral_decompose(&a).unwrap();
            let mut sum = CMatrix::zeros(d, d);
            let mut rebuilt = CMatrix::zeros(d, d);
            for (i, e) in es.iter().enumerate() {
                for (j, f) in es.iter().enumerate() {
                    let prod = &e.projector * &f.projector;
                    let expect = if i == j { e.projector.clone() } else { CMatrix::zeros(d, d) };
                    assert!(max_entry(&(prod - expect)) < 1e-10);
                }
                sum += &e.projector;
                rebuilt += e.projector.scale(e.value);
            }
            assert!(max_entry(&(sum - CMatrix::identity(d, d))) < 1e-10);
            assert!(max_entry(&(rebuilt - &a)) < 1e-9);
            assert!(es.windows(2).all(|w| w[0].value < w[1].value));
        }
    }

    #[test]
    fn degenerate_eigenvalues_cluster() {
        let es = spectral_decompose(&diag(&[2.0, 1.0, 2.0 + 1e-11])).unwrap();
        assert_eq!(es.len(), 2);
        assert_eq!(es[1].multiplicity, 2);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = cmatrix(&[&[(0.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0), (0.0, 0.0)]]);
        assert!(matches!(spectral_decompose(&a), Err(QuantumError::NotHermitian(_))));
    }

    #[test]
    fn born_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = cvector(&[(s, 0.0), (s, 0.0)]);
        let z = diag(&[1.0, -1.0]);
        let p = born_probability(&plus, &z, &BorelSet::point(1.0)).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        let all = born_probability(&plus, &z, &BorelSet::real_line()).unwrap();
        assert!((all - 1.0).abs() < 1e-12);
        let up = cvector(&[(1.0, 0.0), (0.0, 0.0)]);
        let p = born_probability(&up, &z, &BorelSet::parse("[0.5, 2]").unwrap()).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        let bad = cvector(&[(1.0, 0.0), (1.0, 0.0)]);
        assert!(matches!(
            born_probability(&bad, &z, &BorelSet::real_line()),
            Err(QuantumError::NotNormalized(_))
        ));
    }

    #[test]
    fn phase_and_conjugation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 2..=5 {
            let a = random_hermitian(&mut rng, d);
            let psi = random_state(&mut rng, d);
            let u = random_unitary(&mut rng, d);
            let es = spectral_decompose(&a).unwrap();
            let delta = BorelSet::parse(&format!("(-inf, {}]", es[0].value)).unwrap();
            let base = born_probability(&psi, &a, &delta).unwrap();
            for theta in [std::f64::consts::PI / 7.0, std::f64::consts::PI / 3.0, 1.0] {
                let p = born_probability(&with_phase(&psi, theta), &a, &delta).unwrap();
                assert!((p - base).abs() < 1e-10);
            }
            let moved = evolve(&psi, &u).unwrap();
            let conj = &u * &a * u.adjoint();
            let p = born_probability(&moved, &conj, &delta).unwrap();
            assert!((p - base).abs() < 1e-9);
        }
    }

    #[test]
    fn evolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = random_state(&mut rng, 4);
        let u = random_unitary(&mut rng, 4);
        let id = CMatrix::identity(4, 4);
        assert_eq!(evolve(&psi, &id).unwrap(), psi);
        let there = evolve(&psi, &u).unwrap();
        assert!((norm_sq(&there) - 1.0).abs() < 1e-12);
        let back = evolve(&there, &u.adjoint()).unwrap();
        assert!((back - &psi).iter().all(|z| z.norm() < 1e-12));
        assert!(matches!(
            evolve(&psi, &diag(&[2.0, 1.0, 1.0, 1.0])),
            Err(QuantumError::NotUnitary(_))
        ));
        assert!(matches!(
            evolve(&psi, &CMatrix::identity(3, 3)),
            Err(QuantumError::DimensionMismatch { .. })
        ));
    }
}
