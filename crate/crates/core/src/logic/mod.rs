//! A small first-order language over finite structures, with checkers for the
//! identity axioms and for identity of indiscernibles.

mod eval;
mod formula;
mod identity;
mod parser;
mod pii;

use thiserror::Error;

use crate::lex::ParseError;
use crate::structures::StructureError;

pub use eval::{eval, eval_sentence, Assignment};
pub use formula::{Formula, Term};
pub use identity::{
    check_identity_axioms, defined_identity, expand_defined_identity, ExtensionalityVerdict,
    IdentityAxiomsReport, ReflexivityVerdict, SubstitutionVerdict, SubstitutionWitness, MAX_WITNESSES,
};
pub use parser::{parse_document, parse_formula, predicates_used, QlogDocument};
pub use pii::{
    pii_first_order, pii_second_order, pii_second_order_with, PropertyWitness, SecondOrderPii, Semantics,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("predicate `{name}` has arity {expected}, applied to {found} arguments")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("element {element} outside domain of size {size}")]
    ElementOutOfDomain { element: usize, size: usize },
    #[error("schema `${0}` must be instantiated before evaluation")]
    UninstantiatedSchema(String),
    #[error("structure has no designated equality relation")]
    MissingEquality,
    #[error("document declares no structure")]
    NoStructure,
    #[error("no formula named `{0}`")]
    UnknownFormula(String),
    #[error("constant `{0}` declared but never interpreted")]
    UninterpretedConstant(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}
