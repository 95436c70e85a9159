//! Symmetrized product states in `(C^d)^{⊗n}` and the claim that permuting
//! indistinguishable particles changes no expectation value.
//!
//! Tensor index of `|i_0 i_1 ... i_{n-1}>` is `Σ i_j d^(n-1-j)`.

use itertools::Itertools;
use num_complex::Complex64;
use serde::Serialize;

use super::{FockError, Statistics};
use crate::quantum::{CMatrix, CVector};
use crate::structures::Permutation;

pub const INDISTINGUISHABILITY_TOL: f64 = 1e-10;
/// Norm below which a symmetrized state counts as the zero vector.
const ZERO_TOL: f64 = 1e-12;

fn digits(mut idx: usize, n: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

fn encode(ds: &[usize], d: usize) -> usize {
    ds.iter().fold(0, |acc, &x| acc * d + x)
}

fn all_perms(n: usize) -> impl Iterator<Item = Permutation> {
    (0..n).permutations(n).map(|p| Permutation::from_images(p).expect("valid permutation"))
}

fn weight(p: &Permutation, stat: Statistics) -> i32 {
    match stat {
        Statistics::Bosonic => 1,
        Statistics::Fermionic => p.sign(),
    }
}

fn factor_dim<T>(factors: &[Vec<T>]) -> Result<usize, FockError> {
    let d = factors.first().map_or(0, Vec::len);
    if factors.iter().any(|f| f.len() != d) {
        return Err(FockError::Shape("factors must share one dimension".into()));
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Symmetrized {
    pub factors: usize,
    pub dim: usize,
    /// Normalized, or all zeros when `vanished`.
    pub vector: CVector,
    /// The antisymmetrized product was zero, as for a repeated fermion state.
    pub vanished: bool,
}

/// `Σ_σ w(σ) φ_σ(0) ⊗ ... ⊗ φ_σ(n-1)`, normalized, with `w = 1` for bosons
/// (the permanent expansion) and `w = sgn σ` for fermions (the determinant).
pub fn symmetrize(factors: &[CVector], stat: Statistics) -> Result<Symmetrized, FockError> {
    let as_vecs: Vec<Vec<Complex64>> = factors.iter().map(|f| f.iter().copied().collect()).collect();
    let d = factor_dim(&as_vecs)?;
    let n = factors.len();
    let size = d.pow(n as u32);
    let mut v = CVector::zeros(size);
    for p in all_perms(n) {
        let w = f64::from(weight(&p, stat));
        for (idx, slot) in v.iter_mut().enumerate() {
            let ds = digits(idx, n, d);
            let prod: Complex64 = (0..n).map(|j| as_vecs[p.apply(j)][ds[j]]).product();
            *slot += prod * w;
        }
    }
    let norm = v.norm();
    let vanished = norm < ZERO_TOL;
    Ok(Symmetrized {
        factors: n,
        dim: d,
        vector: if vanished { CVector::zeros(size) } else { v.unscale(norm) },
        vanished,
    })
}

/// Unnormalized integer version of [`symmetrize`].
pub fn symmetrize_exact(factors: &[Vec<i64>], stat: Statistics) -> Result<Vec<i64>, FockError> {
    let d = factor_dim(factors)?;
    let n = factors.len();
    let mut v = vec![0i64; d.pow(n as u32)];
    for p in all_perms(n) {
        let w = i64::from(weight(&p, stat));
        for (idx, slot) in v.iter_mut().enumerate() {
            let ds = digits(idx, n, d);
            *slot += w * (0..n).map(|j| factors[p.apply(j)][ds[j]]).product::<i64>();
        }
    }
    Ok(v)
}

fn permute_generic<T: Clone + Default>(state: &[T], n: usize, d: usize, pi: &Permutation) -> Result<Vec<T>, FockError> {
    if pi.len() != n || state.len() != d.pow(n as u32) {
        return Err(FockError::Shape(format!(
            "state of length {} and a permutation of {} points do not fit {n} factors of dimension {d}",
            state.len(),
            pi.len()
        )));
    }
    let mut out = vec![T::default(); state.len()];
    for (idx, x) in state.iter().enumerate() {
        let ds = digits(idx, n, d);
        let mut moved = vec![0; n];
        for j in 0..n {
            moved[pi.apply(j)] = ds[j];
        }
        out[encode(&moved, d)] = x.clone();
    }
    Ok(out)
}

/// `P_π`: the factor in position `j` moves to position `π(j)`.
pub fn permute_factors(state: &CVector, n: usize, d: usize, pi: &Permutation) -> Result<CVector, FockError> {
    let v: Vec<Complex64> = state.iter().copied().collect();
    let out = permute_generic(&v, n, d, pi)?;
    Ok(CVector::from_vec(out))
}

pub fn permute_factors_exact(state: &[i64], n: usize, d: usize, pi: &Permutation) -> Result<Vec<i64>, FockError> {
    permute_generic(state, n, d, pi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    Neither,
    Zero,
}

/// Compares the state with its images under adjacent transpositions.
pub fn symmetry_of(state: &CVector, n: usize, d: usize) -> Result<Symmetry, FockError> {
    if state.norm() < ZERO_TOL {
        return Ok(Symmetry::Zero);
    }
    let (mut sym, mut anti) = (true, true);
    for i in 0..n.saturating_sub(1) {
        let swapped = permute_factors(state, n, d, &Permutation::swap(n, i, i + 1))?;
        sym &= (&swapped - state).camax() <= ZERO_TOL;
        anti &= (&swapped + state).camax() <= ZERO_TOL;
    }
    Ok(match (sym, anti) {
        (true, _) => Symmetry::Symmetric,
        (false, true) => Symmetry::Antisymmetric,
        (false, false) => Symmetry::Neither,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndistinguishabilityReport {
    pub symmetry: Symmetry,
    /// The postulate speaks only of symmetric and antisymmetric states.
    pub applicable: bool,
    /// `<s|O|s>`.
    pub expectation: f64,
    /// `<s|P_π† O P_π|s>`.
    pub permuted_expectation: f64,
    pub difference: f64,
    /// `difference <= 1e-10`.
    pub equal: bool,
}

pub fn indistinguishability_check(
    state: &CVector,
    n: usize,
    d: usize,
    observable: &CMatrix,
    pi: &Permutation,
) -> Result<IndistinguishabilityReport, FockError> {
    let size = d.pow(n as u32);
    if observable.nrows() != size || observable.ncols() != size {
        return Err(FockError::Shape(format!(
            "observable is {}x{}, expected {size}x{size}",
            observable.nrows(),
            observable.ncols()
        )));
    }
    let moved = permute_factors(state, n, d, pi)?;
    let expect = |v: &CVector| v.dotc(&(observable * v)).re;
    let (e1, e2) = (expect(state), expect(&moved));
    let symmetry = symmetry_of(state, n, d)?;
    let difference = (e1 - e2).abs();
    Ok(IndistinguishabilityReport {
        symmetry,
        applicable: matches!(symmetry, Symmetry::Symmetric | Symmetry::Antisymmetric),
        expectation: e1,
        permuted_expectation: e2,
        difference,
        equal: difference <= INDISTINGUISHABILITY_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::random::{random_hermitian, random_state};
    use crate::quantum::{cvector, diag};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn basis(d: usize, i: usize) -> CVector {
        CVector::from_fn(d, |j, _| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
    }

    #[test]
    fn examples() {
        let phi = cvector(&[(0.6, 0.0), (0.0, 0.8)]);
        let b = symmetrize(&[phi.clone(), phi.clone()], Statistics::Bosonic).unwrap();
        let product = phi.kronecker(&phi);
        assert!((b.vector - product).camax() < 1e-12);

        let f = symmetrize(&[phi.clone(), phi], Statistics::Fermionic).unwrap();
        assert!(f.vanished);

        let f = symmetrize(&[basis(2, 0), basis(2, 1)], Statistics::Fermionic).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let want = cvector(&[(0.0, 0.0), (s, 0.0), (-s, 0.0), (0.0, 0.0)]);
        assert!((f.vector - want).camax() < 1e-12);
    }

    #[test]
    fn permutation_acts_by_sign_exactly() {
        let factors = vec![vec![1, 2, 0], vec![0, 1, -1], vec![3, 0, 1]];
        for stat in [Statistics::Bosonic, Statistics::Fermionic] {
            let v = symmetrize_exact(&factors, stat).unwrap();
            for p in all_perms(3) {
                let moved = permute_factors_exact(&v, 3, 3, &p).unwrap();
                let w = i64::from(weight(&p, stat));
                assert_eq!(moved, v.iter().map(|x| w * x).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn permutation_acts_by_sign_in_floats() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let factors: Vec<CVector> = (0..3).map(|_| random_state(&mut rng, 3)).collect();
        for stat in [Statistics::Bosonic, Statistics::Fermionic] {
            let s = symmetrize(&factors, stat).unwrap();
            for p in all_perms(3) {
                let moved = permute_factors(&s.vector, 3, 3, &p).unwrap();
                let w = f64::from(weight(&p, stat));
                assert!((moved - s.vector.scale(w)).camax() < 1e-12);
            }
            let want = match stat {
                Statistics::Bosonic => Symmetry::Symmetric,
                Statistics::Fermionic => Symmetry::Antisymmetric,
            };
            assert_eq!(symmetry_of(&s.vector, 3, 3).unwrap(), want);
        }
    }

    #[test]
    fn permuting_indistinguishable_particles_is_unobservable() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let swap = Permutation::swap(2, 0, 1);
        for stat in [Statistics::Bosonic, Statistics::Fermionic] {
            for _ in 0..20 {
                let factors: Vec<CVector> = (0..2).map(|_| random_state(&mut rng, 3)).collect();
                let s = symmetrize(&factors, stat).unwrap();
                let o = random_hermitian(&mut rng, 9);
                let r = indistinguishability_check(&s.vector, 2, 3, &o, &swap).unwrap();
                assert!(r.applicable && r.equal, "{r:?}");
            }
        }
    }

    #[test]
    fn unsymmetrized_product_exposes_the_swap() {
        let ket01 = basis(2, 0).kronecker(&basis(2, 1));
        let z_i = diag(&[1.0, -1.0]).kronecker(&CMatrix::identity(2, 2));
        let r = indistinguishability_check(&ket01, 2, 2, &z_i, &Permutation::swap(2, 0, 1)).unwrap();
        assert_eq!(r.symmetry, Symmetry::Neither);
        assert!(!r.applicable);
        assert!(!r.equal);
        assert_eq!((r.expectation, r.permuted_expectation), (1.0, -1.0));
    }

    #[test]
    fn shape_errors() {
        let v = CVector::zeros(4);
        assert!(permute_factors(&v, 2, 3, &Permutation::identity(2)).is_err());
        assert!(symmetrize(&[CVector::zeros(2), CVector::zeros(3)], Statistics::Bosonic).is_err());
    }
}
