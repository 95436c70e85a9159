use std::fmt;

use serde::Serialize;

use super::StructureError;

/// A bijection on `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, StructureError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(StructureError::NotBijective(format!("{images:?}")));
            }
        }
        Ok(Permutation(images))
    }

    /// Transposition of `a` and `b` on `0..n`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles, fixed points included, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j];
            }
            out.push(cycle);
        }
        out
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm_strategy() -> impl Strategy<Value = Permutation> {
        (1usize..8)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn display_and_sign() {
        let p = Permutation::from_images(vec![1, 2, 0, 3]).unwrap();
        assert_eq!(p.to_string(), "(0 1 2)");
        assert_eq!(p.sign(), 1);
        assert_eq!(Permutation::swap(3, 0, 2).sign(), -1);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(p in perm_strategy()) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }

        #[test]
        fn sign_is_multiplicative(p in perm_strategy(), seed in any::<u64>()) {
            let n = p.len();
            let q = Permutation::swap(n, (seed as usize) % n, (seed as usize / 7) % n);
            prop_assert_eq!(p.compose(&q).sign(), p.sign() * q.sign());
        }
    }
}
