//! Random finite structures for property checks.

use itertools::Itertools;
use rand::Rng;

use super::{FiniteStructure, Signature};

#[derive(Clone, Debug)]
pub struct StructureParams {
    pub min_size: usize,
    pub max_size: usize,
    pub max_relations: usize,
    pub max_arity: usize,
    /// Probability that a given tuple is in a table.
    pub density: f64,
    /// Probability of one interpreted constant.
    pub constant_prob: f64,
}

impl Default for StructureParams {
    fn default() -> Self {
        StructureParams {
            min_size: 1,
            max_size: 7,
            max_relations: 3,
            max_arity: 2,
            density: 0.3,
            constant_prob: 0.15,
        }
    }
}

/// Relations `R0, R1, ...` with random arities and tables. Sparse tables
/// are common enough that many outputs have nontrivial symmetry.
pub fn random_structure<R: Rng + ?Sized>(rng: &mut R, p: &StructureParams) -> FiniteStructure {
    let n = rng.random_range(p.min_size..=p.max_size);
    let rels = rng.random_range(0..=p.max_relations);
    let mut sig = Signature::new();
    let arities: Vec<usize> = (0..rels).map(|_| rng.random_range(1..=p.max_arity)).collect();
    for (i, &a) in arities.iter().enumerate() {
        sig.add_relation(format!("R{i}"), a).expect("fresh names");
    }
    let with_const = n > 0 && rng.random_bool(p.constant_prob);
    if with_const {
        sig = sig.with_constant("c").expect("fresh name");
    }
    let density = if rng.random_bool(0.5) { p.density } else { p.density / 3.0 };
    let mut s = FiniteStructure::new(sig, n);
    for (i, &a) in arities.iter().enumerate() {
        let name = format!("R{i}");
        for tuple in std::iter::repeat_n(0..n, a).multi_cartesian_product() {
            if rng.random_bool(density) {
                s.add_tuple(&name, tuple).expect("in range");
            }
        }
    }
    if with_const {
        let e = rng.random_range(0..n);
        s.set_constant("c", e).expect("in range");
    }
    s
}

/// The directed cycle on `n` elements; its automorphisms are the rotations,
/// which act transitively.
pub fn directed_cycle(n: usize) -> FiniteStructure {
    let sig = Signature::new().with_relation("Next", 2).expect("fresh name");
    FiniteStructure::new(sig, n)
        .with_tuples("Next", (0..n).map(|i| vec![i, (i + 1) % n]))
        .expect("in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{
        automorphisms, automorphisms_naive, is_automorphism, is_conservative_extension, is_rigid, orbit_indiscernible,
        orbits, rigidify,
    };
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn arb_structure() -> impl Strategy<Value = FiniteStructure> {
        any::<u64>().prop_map(|seed| random_structure(&mut ChaCha8Rng::seed_from_u64(seed), &StructureParams::default()))
    }

    #[test]
    fn tables_cover_all_tuples_sometimes() {
        let p = StructureParams {
            min_size: 2,
            max_size: 2,
            max_relations: 1,
            max_arity: 2,
            density: 1.0,
            constant_prob: 0.0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let full = (0..20)
            .map(|_| random_structure(&mut rng, &p))
            .any(|s| s.tables().any(|(_, a, t)| t.len() == 2usize.pow(a as u32)));
        assert!(full);
    }

    #[test]
    fn cycles_are_transitive() {
        for n in 1..=6 {
            let s = directed_cycle(n);
            assert_eq!(automorphisms(&s).len(), n);
            assert_eq!(orbits(&s).len(), 1);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pruned_search_equals_naive(s in arb_structure()) {
            let auts = automorphisms(&s);
            prop_assert_eq!(&auts.group, &automorphisms_naive(&s));
            // closure is checked pairwise, so skip the largest symmetric groups
            if auts.len() <= 720 {
                prop_assert!(auts.is_group());
            }
            prop_assert!(auts.group.iter().all(|h| is_automorphism(&s, h)));
        }

        #[test]
        fn orbit_indiscernibility_is_an_equivalence(s in arb_structure()) {
            let n = s.size();
            let m: Vec<Vec<bool>> = (0..n)
                .map(|a| (0..n).map(|b| orbit_indiscernible(&s, a, b).unwrap()).collect())
                .collect();
            let rel = |a: usize, b: usize| m[a][b];
            for a in 0..n {
                prop_assert!(rel(a, a));
                for b in 0..n {
                    prop_assert_eq!(rel(a, b), rel(b, a));
                    for c in 0..n {
                        if rel(a, b) && rel(b, c) {
                            prop_assert!(rel(a, c));
                        }
                    }
                }
            }
        }

        #[test]
        fn rigidify_is_rigid_and_conservative(s in arb_structure()) {
            let r = rigidify(&s);
            prop_assert!(is_rigid(&r));
            prop_assert!(is_conservative_extension(&s, &r));
        }
    }
}
