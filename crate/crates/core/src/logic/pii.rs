use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::identity::defined_identity;
use crate::structures::automorphism::orbits_of;
use crate::structures::{automorphisms_with, FiniteStructure, DEFAULT_MAX_DOMAIN};

/// Distinct pairs `a < b` that no formula of the structure's own language can
/// tell apart. An empty result means identity of indiscernibles holds
/// relative to that language.
pub fn pii_first_order(s: &FiniteStructure) -> Vec<(usize, usize)> {
    s.domain()
        .tuple_combinations()
        .filter(|&(a, b)| defined_identity(s, a, b))
        .collect()
}

/// Which subsets of the domain count as properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    /// Every subset.
    Full,
    /// Only unions of automorphism orbits.
    OrbitInvariant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyWitness {
    pub a: usize,
    pub b: usize,
    /// Extension of a property true of `a` and false of `b`.
    pub property: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondOrderPii {
    pub semantics: Semantics,
    pub witnesses: Vec<PropertyWitness>,
    /// Distinct pairs for which no admissible property separates them.
    pub failures: Vec<(usize, usize)>,
    pub warning: Option<String>,
}

impl SecondOrderPii {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn pii_second_order(s: &FiniteStructure, semantics: Semantics) -> SecondOrderPii {
    pii_second_order_with(s, semantics, DEFAULT_MAX_DOMAIN)
}

/// Under full semantics `{a}` always separates `a` from `b`. Under the
/// orbit-invariant restriction the smallest candidate is the orbit of `a`,
/// and any admissible property containing `a` contains that whole orbit, so a
/// pair fails exactly when it lies in one orbit.
pub fn pii_second_order_with(s: &FiniteStructure, semantics: Semantics, max_domain: usize) -> SecondOrderPii {
    let (classes, warning): (Vec<BTreeSet<usize>>, Option<String>) = match semantics {
        Semantics::Full => (s.domain().map(|a| BTreeSet::from([a])).collect(), None),
        Semantics::OrbitInvariant => {
            let auts = automorphisms_with(s, max_domain);
            (
                orbits_of(s.size(), &auts.group)
                    .into_iter()
                    .map(|o| o.into_iter().collect())
                    .collect(),
                auts.warning.clone(),
            )
        }
    };
    let class_of = |x: usize| classes.iter().find(|c| c.contains(&x)).expect("classes cover the domain");

    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for (a, b) in s.domain().tuple_combinations() {
        let property = class_of(a);
        if property.contains(&b) {
            failures.push((a, b));
        } else {
            witnesses.push(PropertyWitness {
                a,
                b,
                property: property.clone(),
            });
        }
    }
    SecondOrderPii {
        semantics,
        witnesses,
        failures,
        warning,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{models, orbit_indiscernible, orbits};

    #[test]
    fn poor_language_counterexample() {
        assert_eq!(pii_first_order(&models::pure_domain(2)), vec![(0, 1)]);
        assert!(pii_first_order(&models::linear_order(4)).is_empty());
        assert_eq!(pii_first_order(&models::one_predicate(3)), vec![(1, 2)]);
    }

    #[test]
    fn full_semantics_uses_singletons() {
        let s = models::gaussian_field_mod3();
        let r = pii_second_order(&s, Semantics::Full);
        assert!(r.holds());
        assert_eq!(r.witnesses.len(), 36);
        for w in &r.witnesses {
            assert_eq!(w.property, BTreeSet::from([w.a]));
        }
    }

    #[test]
    fn conjugation_pair_fails_under_orbit_invariance() {
        let s = models::conjugation_pair();
        let r = pii_second_order(&s, Semantics::OrbitInvariant);
        assert_eq!(r.failures, vec![(0, 1)]);

        let f = models::gaussian_field_mod3();
        let i = f.element_by_name("i").unwrap();
        let minus_i = f.element_by_name("-i").unwrap();
        let r = pii_second_order(&f, Semantics::OrbitInvariant);
        assert!(r.failures.contains(&(i.min(minus_i), i.max(minus_i))));
        for &(a, b) in &r.failures {
            assert!(orbit_indiscernible(&f, a, b).unwrap());
        }
    }

    #[test]
    fn rigid_structures_have_no_failures() {
        let s = models::linear_order(5);
        assert!(pii_second_order(&s, Semantics::OrbitInvariant).holds());
    }

    #[test]
    fn witnesses_are_orbit_unions() {
        let s = models::one_predicate(4);
        let orbs = orbits(&s);
        let r = pii_second_order(&s, Semantics::OrbitInvariant);
        for w in &r.witnesses {
            assert!(w.property.contains(&w.a) && !w.property.contains(&w.b));
            let covered: BTreeSet<usize> = orbs
                .iter()
                .filter(|o| o.iter().any(|x| w.property.contains(x)))
                .flatten()
                .copied()
                .collect();
            assert_eq!(covered, w.property);
        }
    }
}
