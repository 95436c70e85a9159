use std::collections::BTreeSet;
use std::fmt;

/// A term: a variable or constant symbol, or a literal domain element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Name(String),
    Elem(usize),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Name(name.to_string())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Name(n) => f.write_str(n),
            Term::Elem(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    /// Schema metavariable such as `$alpha(x)`, replaced by
    /// [`Formula::instantiate`] before evaluation.
    Schema(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(pred.to_string(), args)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(body))
    }

    /// Left-nested conjunction; `True` for an empty list.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Names occurring free (variables and constant symbols alike).
    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut terms = |ts: &[Term], bound: &Vec<String>| {
            for t in ts {
                if let Term::Name(n) = t {
                    if !bound.contains(n) {
                        out.insert(n.clone());
                    }
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(_, args) | Formula::Schema(_, args) => terms(args, bound),
            Formula::Eq(a, b) => terms(&[a.clone(), b.clone()], bound),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_schema(&self) -> bool {
        match self {
            Formula::Schema(..) => true,
            Formula::True | Formula::False | Formula::Atom(..) | Formula::Eq(..) => false,
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => f.has_schema(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.has_schema() || b.has_schema()
            }
        }
    }

    /// Replaces every occurrence `$name(t1..tk)` with `body`, where `params`
    /// name the body's placeholders and are substituted by `t1..tk`.
    pub fn instantiate(&self, name: &str, params: &[&str], body: &Formula) -> Formula {
        let rec = |f: &Formula| Box::new(f.instantiate(name, params, body));
        match self {
            Formula::Schema(n, args) if n == name && args.len() == params.len() => {
                let mut out = body.clone();
                for (p, t) in params.iter().zip(args) {
                    out = out.substitute(p, t);
                }
                out
            }
            Formula::True | Formula::False | Formula::Atom(..) | Formula::Eq(..) | Formula::Schema(..) => {
                self.clone()
            }
            Formula::Not(f) => Formula::Not(rec(f)),
            Formula::And(a, b) => Formula::And(rec(a), rec(b)),
            Formula::Or(a, b) => Formula::Or(rec(a), rec(b)),
            Formula::Implies(a, b) => Formula::Implies(rec(a), rec(b)),
            Formula::Iff(a, b) => Formula::Iff(rec(a), rec(b)),
            Formula::Forall(v, f) => Formula::Forall(v.clone(), rec(f)),
            Formula::Exists(v, f) => Formula::Exists(v.clone(), rec(f)),
        }
    }

    /// Replaces free occurrences of `var` by `term`. The caller keeps
    /// `term`'s names clear of the binders it passes under.
    pub fn substitute(&self, var: &str, term: &Term) -> Formula {
        let sub = |t: &Term| match t {
            Term::Name(n) if n == var => term.clone(),
            _ => t.clone(),
        };
        let rec = |f: &Formula| Box::new(f.substitute(var, term));
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(sub).collect()),
            Formula::Schema(p, args) => Formula::Schema(p.clone(), args.iter().map(sub).collect()),
            Formula::Eq(a, b) => Formula::Eq(sub(a), sub(b)),
            Formula::Not(f) => Formula::Not(rec(f)),
            Formula::And(a, b) => Formula::And(rec(a), rec(b)),
            Formula::Or(a, b) => Formula::Or(rec(a), rec(b)),
            Formula::Implies(a, b) => Formula::Implies(rec(a), rec(b)),
            Formula::Iff(a, b) => Formula::Iff(rec(a), rec(b)),
            Formula::Forall(v, _) | Formula::Exists(v, _) if v == var => self.clone(),
            Formula::Forall(v, f) => Formula::Forall(v.clone(), rec(f)),
            Formula::Exists(v, f) => Formula::Exists(v.clone(), rec(f)),
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    let parts: Vec<String> = args.iter().map(Term::to_string).collect();
    write!(f, "({})", parts.join(", "))
}

impl fmt::Display for Formula {
    /// Canonical form: binary connectives always parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(p, args) => {
                f.write_str(p)?;
                write_args(f, args)
            }
            Formula::Schema(p, args) => {
                write!(f, "${p}")?;
                write_args(f, args)
            }
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Eq(a, b) => write!(f, "~({a} = {b})"),
                other => write!(f, "~{other}"),
            },
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <-> {b})"),
            Formula::Forall(v, body) => write!(f, "forall {v} {}", Quantified(body)),
            Formula::Exists(v, body) => write!(f, "exists {v} {}", Quantified(body)),
        }
    }
}

/// Quantifier bodies that are bare equalities need parentheses to reparse.
struct Quantified<'a>(&'a Formula);

impl fmt::Display for Quantified<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Formula::Eq(..) => write!(f, "({})", self.0),
            other => write!(f, "{other}"),
        }
    }
}
