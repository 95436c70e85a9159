//! Tarskian satisfaction over finite structures.

use std::collections::BTreeMap;

use super::formula::{Formula, Term};
use super::LogicError;
use crate::structures::FiniteStructure;

/// Values for a formula's free variables.
pub type Assignment = BTreeMap<String, usize>;

/// Evaluates `f` in `s` under `sigma`.
///
/// Names resolve to bound or assigned variables first, then to constants of
/// the structure. `=` reads the structure's designated equality relation when
/// there is one and the diagonal otherwise. The whole formula is validated
/// before evaluation, so errors do not depend on short-circuiting.
pub fn eval(s: &FiniteStructure, f: &Formula, sigma: &Assignment) -> Result<bool, LogicError> {
    validate(s, f, &mut sigma.keys().cloned().collect())?;
    let mut env = sigma.clone();
    Ok(sat(s, f, &mut env))
}

/// Evaluates a sentence with no free variables.
pub fn eval_sentence(s: &FiniteStructure, f: &Formula) -> Result<bool, LogicError> {
    eval(s, f, &Assignment::new())
}

fn validate(s: &FiniteStructure, f: &Formula, scope: &mut Vec<String>) -> Result<(), LogicError> {
    let check_term = |t: &Term, scope: &Vec<String>| -> Result<(), LogicError> {
        match t {
            Term::Name(n) => {
                if scope.contains(n) || s.constant(n).is_some() {
                    Ok(())
                } else {
                    Err(LogicError::UnboundVariable(n.clone()))
                }
            }
            Term::Elem(e) if *e >= s.size() => Err(LogicError::ElementOutOfDomain {
                element: *e,
                size: s.size(),
            }),
            Term::Elem(_) => Ok(()),
        }
    };
    match f {
        Formula::True | Formula::False => Ok(()),
        Formula::Atom(p, args) => {
            let arity = s
                .signature()
                .arity(p)
                .ok_or_else(|| LogicError::UnknownPredicate(p.clone()))?;
            if arity != args.len() {
                return Err(LogicError::ArityMismatch {
                    name: p.clone(),
                    expected: arity,
                    found: args.len(),
                });
            }
            args.iter().try_for_each(|t| check_term(t, scope))
        }
        Formula::Eq(a, b) => {
            check_term(a, scope)?;
            check_term(b, scope)
        }
        Formula::Schema(n, _) => Err(LogicError::UninstantiatedSchema(n.clone())),
        Formula::Not(g) => validate(s, g, scope),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            validate(s, a, scope)?;
            validate(s, b, scope)
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            scope.push(v.clone());
            let r = validate(s, g, scope);
            scope.pop();
            r
        }
    }
}

fn value(s: &FiniteStructure, t: &Term, env: &Assignment) -> usize {
    match t {
        Term::Elem(e) => *e,
        Term::Name(n) => env
            .get(n)
            .copied()
            .or_else(|| s.constant(n))
            .expect("validated"),
    }
}

fn sat(s: &FiniteStructure, f: &Formula, env: &mut Assignment) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(p, args) => {
            let tuple: Vec<usize> = args.iter().map(|t| value(s, t, env)).collect();
            s.holds(p, &tuple)
        }
        Formula::Eq(a, b) => {
            let (x, y) = (value(s, a, env), value(s, b, env));
            match s.equality() {
                Some(eq) => s.holds(eq, &[x, y]),
                None => x == y,
            }
        }
        Formula::Schema(..) => unreachable!("rejected by validate"),
        Formula::Not(g) => !sat(s, g, env),
        Formula::And(a, b) => sat(s, a, env) && sat(s, b, env),
        Formula::Or(a, b) => sat(s, a, env) || sat(s, b, env),
        Formula::Implies(a, b) => !sat(s, a, env) || sat(s, b, env),
        Formula::Iff(a, b) => sat(s, a, env) == sat(s, b, env),
        Formula::Forall(v, g) => quantify(s, v, g, env, true),
        Formula::Exists(v, g) => quantify(s, v, g, env, false),
    }
}

fn quantify(s: &FiniteStructure, v: &str, body: &Formula, env: &mut Assignment, universal: bool) -> bool {
    let saved = env.get(v).copied();
    let mut result = universal;
    for e in s.domain() {
        env.insert(v.to_string(), e);
        if sat(s, body, env) != universal {
            result = !universal;
            break;
        }
    }
    match saved {
        Some(old) => env.insert(v.to_string(), old),
        None => env.remove(v),
    };
    result
}
