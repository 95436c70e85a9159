//! Identity defined by agreement on predicates, and the three identity axioms
//! (reflexivity, substitution of identicals, extensionality) checked against a
//! designated equality relation.

use itertools::Itertools;
use serde::Serialize;

use super::formula::{Formula, Term};
use super::LogicError;
use crate::structures::{FiniteStructure, Signature};

/// Names `z1, z2, ...` skipping `x` and `y`.
fn fresh_vars(count: usize, x: &str, y: &str) -> Vec<String> {
    (1..)
        .map(|i| format!("z{i}"))
        .filter(|v| v != x && v != y)
        .take(count)
        .collect()
}

/// The defining formula for `x = y` over a signature: agreement on every
/// unary predicate, and for every n-ary relation and every argument position,
/// agreement on all tuples completed by universally quantified variables.
///
/// `exclude` drops one relation, normally the designated equality.
pub fn expand_defined_identity(sig: &Signature, exclude: Option<&str>, x: &str, y: &str) -> Formula {
    let mut parts = Vec::new();
    for (name, arity) in sig.relations() {
        if Some(name.as_str()) == exclude {
            continue;
        }
        let zs = fresh_vars(arity - 1, x, y);
        for pos in 0..*arity {
            let args_with = |v: &str| -> Vec<Term> {
                let mut others = zs.iter();
                (0..*arity)
                    .map(|i| {
                        if i == pos {
                            Term::var(v)
                        } else {
                            Term::var(others.next().unwrap())
                        }
                    })
                    .collect()
            };
            let body = Formula::iff(
                Formula::atom(name, args_with(x)),
                Formula::atom(name, args_with(y)),
            );
            parts.push(zs.iter().rev().fold(body, |acc, z| Formula::forall(z, acc)));
        }
    }
    Formula::conjunction(parts)
}

/// `a` and `b` agree on every relation at every position, all other
/// positions ranging over the whole domain. The designated equality relation,
/// if any, is not part of the language being tested.
pub fn defined_identity(s: &FiniteStructure, a: usize, b: usize) -> bool {
    if a == b {
        return true;
    }
    s.tables()
        .filter(|(name, _, _)| Some(*name) != s.equality())
        .all(|(name, arity, _)| {
            (0..arity).all(|pos| {
                std::iter::repeat_n(s.domain(), arity - 1)
                    .multi_cartesian_product()
                    .all(|rest| {
                        let mut ta = rest.clone();
                        ta.insert(pos, a);
                        let mut tb = rest;
                        tb.insert(pos, b);
                        s.holds(name, &ta) == s.holds(name, &tb)
                    })
            })
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflexivityVerdict {
    pub holds: bool,
    /// Elements `a` with `a = a` false.
    pub counterexamples: Vec<usize>,
}

/// `a = b` holds, and the context `α` is true of `a` but false of `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionWitness {
    pub a: usize,
    pub b: usize,
    /// `α(x)`, an atomic or negated atomic formula in the free variable `x`.
    pub context: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionVerdict {
    pub holds: bool,
    pub failures: usize,
    /// Up to [`MAX_WITNESSES`] failing contexts, in search order.
    pub witnesses: Vec<SubstitutionWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionalityVerdict {
    pub holds: bool,
    /// Pairs with the same members that are not equal.
    pub counterexamples: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityAxiomsReport {
    pub equality: String,
    pub reflexivity: ReflexivityVerdict,
    pub substitution: SubstitutionVerdict,
    /// Only checked when a membership relation is designated.
    pub extensionality: Option<ExtensionalityVerdict>,
    pub note: &'static str,
}

impl IdentityAxiomsReport {
    pub fn all_hold(&self) -> bool {
        self.reflexivity.holds
            && self.substitution.holds
            && self.extensionality.as_ref().is_none_or(|e| e.holds)
    }
}

pub const MAX_WITNESSES: usize = 20;

pub fn check_identity_axioms(s: &FiniteStructure) -> Result<IdentityAxiomsReport, LogicError> {
    let eq = s.equality().ok_or(LogicError::MissingEquality)?.to_string();
    let equal = |x: usize, y: usize| s.holds(&eq, &[x, y]);

    let refl: Vec<usize> = s.domain().filter(|&x| !equal(x, x)).collect();

    // Substitution on literal contexts: replace some occurrences of `a` in a
    // tuple by `b` and require the literal's truth value to survive.
    let mut failures = 0usize;
    let mut witnesses = Vec::new();
    for (a, b) in s.domain().cartesian_product(s.domain()) {
        if a == b || !equal(a, b) {
            continue;
        }
        for (name, arity, _) in s.tables() {
            for tuple in std::iter::repeat_n(s.domain(), arity).multi_cartesian_product() {
                let slots: Vec<usize> = (0..arity).filter(|&i| tuple[i] == a).collect();
                for chosen in slots.iter().copied().powerset().filter(|c| !c.is_empty()) {
                    let mut swapped = tuple.clone();
                    for &i in &chosen {
                        swapped[i] = b;
                    }
                    let before = s.holds(name, &tuple);
                    if before == s.holds(name, &swapped) {
                        continue;
                    }
                    failures += 1;
                    if witnesses.len() < MAX_WITNESSES {
                        let args = (0..arity)
                            .map(|i| {
                                if chosen.contains(&i) {
                                    Term::var("x")
                                } else {
                                    Term::Elem(tuple[i])
                                }
                            })
                            .collect();
                        let atom = Formula::atom(name, args);
                        let context = if before { atom } else { Formula::not(atom) };
                        witnesses.push(SubstitutionWitness {
                            a,
                            b,
                            context: context.to_string(),
                        });
                    }
                }
            }
        }
    }

    let extensionality = s.membership().map(|m| {
        let members = |x: usize| -> Vec<usize> { s.domain().filter(|&z| s.holds(m, &[z, x])).collect() };
        let counterexamples: Vec<(usize, usize)> = s
            .domain()
            .tuple_combinations()
            .chain(s.domain().map(|x| (x, x)))
            .filter(|&(x, y)| members(x) == members(y) && !equal(x, y))
            .sorted()
            .collect();
        ExtensionalityVerdict {
            holds: counterexamples.is_empty(),
            counterexamples,
        }
    });

    Ok(IdentityAxiomsReport {
        equality: eq,
        reflexivity: ReflexivityVerdict {
            holds: refl.is_empty(),
            counterexamples: refl,
        },
        substitution: SubstitutionVerdict {
            holds: failures == 0,
            failures,
            witnesses,
        },
        extensionality,
        note: "substitution checked on atomic and negated atomic contexts; satisfaction is compositional",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{eval, parse_formula, Assignment};
    use crate::structures::{models, rigidify};

    #[test]
    fn defined_identity_examples() {
        let s = models::one_predicate(3);
        assert!(defined_identity(&s, 0, 0));
        assert!(!defined_identity(&s, 0, 1));
        assert!(defined_identity(&s, 1, 2));
        let poor = models::pure_domain(2);
        assert!(defined_identity(&poor, 0, 1));
    }

    #[test]
    fn expansion_agrees_with_direct_check() {
        for s in [
            models::one_predicate(4),
            models::linear_order(4),
            models::gaussian_field_mod3(),
            models::congruence_masking(),
        ] {
            let f = expand_defined_identity(s.signature(), s.equality(), "x", "y");
            for a in s.domain() {
                for b in s.domain() {
                    let sigma: Assignment = [("x".to_string(), a), ("y".to_string(), b)].into();
                    // with a designated non-diagonal `=`, only the expansion is meaningful
                    assert_eq!(
                        eval(&s, &f, &sigma).unwrap(),
                        defined_identity(&s, a, b),
                        "{a} {b} in\n{s}"
                    );
                }
            }
        }
    }

    #[test]
    fn expansion_avoids_capture() {
        let s = models::linear_order(2);
        let f = expand_defined_identity(s.signature(), None, "z1", "y");
        assert_eq!(f.to_string(), "(forall z2 (Less(z1, z2) <-> Less(y, z2)) & forall z2 (Less(z2, z1) <-> Less(z2, y)))");
    }

    #[test]
    fn diagonal_equality_passes_everything() {
        for s in [
            models::with_diagonal_equality(&models::one_predicate(3)),
            models::small_von_neumann(),
        ] {
            let r = check_identity_axioms(&s).unwrap();
            assert!(r.all_hold(), "{r:?}");
        }
        assert!(check_identity_axioms(&models::small_von_neumann())
            .unwrap()
            .extensionality
            .is_some());
    }

    #[test]
    fn congruence_hides_the_problem_until_extended() {
        let s = models::congruence_masking();
        let r = check_identity_axioms(&s).unwrap();
        assert!(r.reflexivity.holds);
        assert!(r.substitution.holds);

        let ext = rigidify(&s);
        let r = check_identity_axioms(&ext).unwrap();
        assert!(r.reflexivity.holds);
        assert!(!r.substitution.holds);
        let w = &r.substitution.witnesses[0];
        // the context really separates a from b
        let ctx = parse_formula(&w.context).unwrap();
        let at = |e: usize| {
            let sigma: Assignment = [("x".to_string(), e)].into();
            eval(&ext, &ctx, &sigma).unwrap()
        };
        assert!(at(w.a));
        assert!(!at(w.b));
    }

    #[test]
    fn twin_empties_break_extensionality() {
        let r = check_identity_axioms(&models::twin_empties()).unwrap();
        assert!(r.reflexivity.holds && r.substitution.holds);
        let ext = r.extensionality.unwrap();
        assert!(!ext.holds);
        assert_eq!(ext.counterexamples, vec![(0, 1)]);
    }

    #[test]
    fn missing_equality() {
        assert_eq!(
            check_identity_axioms(&models::pure_domain(2)),
            Err(LogicError::MissingEquality)
        );
    }
}
