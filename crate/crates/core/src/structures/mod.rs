//! Finite relational structures and their symmetries.
//!
//! Elements are `0..n`. Two elements are indiscernible in a structure when
//! some automorphism carries one to the other; a structure with no
//! automorphism besides the identity is rigid.

pub(crate) mod automorphism;
mod gen;
pub mod models;
mod permutation;
mod ur;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use automorphism::{
    automorphisms, automorphisms_naive, automorphisms_with, is_automorphism, is_conservative_extension,
    is_rigid, orbit_indiscernible, orbits, rigidify, Automorphisms, DEFAULT_MAX_DOMAIN,
};
pub use gen::{directed_cycle, random_structure, StructureParams};
pub use permutation::Permutation;
pub use ur::{
    build_ur_universe, extend_permutation, identity_property_witness, ExtensionCheck,
    IdentityWitness, Member, UniverseMap, UrUniverse, MAX_UR_MEMBERS,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("symbol `{0}` declared twice")]
    DuplicateSymbol(String),
    #[error("relation `{0}` must have arity at least 1")]
    ZeroArity(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("relation `{name}` has arity {expected}, tuple has {found} components")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("element {element} is outside the domain of size {size}")]
    OutOfDomain { element: usize, size: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("`{0}` is not a bijection")]
    NotBijective(String),
    #[error("permutation acts on {found} points, expected {expected}")]
    PermutationSize { expected: usize, found: usize },
    #[error("ur-universe guard: {0}")]
    UniverseGuard(String),
    #[error("designated relation `{0}` must be binary")]
    NotBinary(String),
}

/// Relation symbols with arities, plus constant symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    relations: Vec<(String, usize)>,
    constants: Vec<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    fn taken(&self, name: &str) -> bool {
        self.relations.iter().any(|(n, _)| n == name) || self.constants.iter().any(|c| c == name)
    }

    pub fn with_relation(mut self, name: impl Into<String>, arity: usize) -> Result<Self, StructureError> {
        self.add_relation(name, arity)?;
        Ok(self)
    }

    pub fn add_relation(&mut self, name: impl Into<String>, arity: usize) -> Result<(), StructureError> {
        let name = name.into();
        if arity == 0 {
            return Err(StructureError::ZeroArity(name));
        }
        if self.taken(&name) {
            return Err(StructureError::DuplicateSymbol(name));
        }
        self.relations.push((name, arity));
        Ok(())
    }

    pub fn with_constant(mut self, name: impl Into<String>) -> Result<Self, StructureError> {
        let name = name.into();
        if self.taken(&name) {
            return Err(StructureError::DuplicateSymbol(name));
        }
        self.constants.push(name);
        Ok(self)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }

    pub fn has_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| c == name)
    }

    /// Relations in declaration order.
    pub fn relations(&self) -> &[(String, usize)] {
        &self.relations
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    /// A relation name not yet in use, built from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.taken(&name) {
            name.insert(0, '_');
        }
        name
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    signature: Signature,
    size: usize,
    labels: Option<Vec<String>>,
    tables: BTreeMap<String, BTreeSet<Vec<usize>>>,
    constants: BTreeMap<String, usize>,
    equality: Option<String>,
    membership: Option<String>,
}

impl FiniteStructure {
    /// A structure with empty relation tables. Constants must be interpreted
    /// with [`FiniteStructure::set_constant`] before use.
    pub fn new(signature: Signature, size: usize) -> Self {
        let tables = signature
            .relations
            .iter()
            .map(|(n, _)| (n.clone(), BTreeSet::new()))
            .collect();
        FiniteStructure {
            signature,
            size,
            labels: None,
            tables,
            constants: BTreeMap::new(),
            equality: None,
            membership: None,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    fn check_element(&self, e: usize) -> Result<(), StructureError> {
        if e < self.size {
            Ok(())
        } else {
            Err(StructureError::OutOfDomain {
                element: e,
                size: self.size,
            })
        }
    }

    pub fn add_tuple(&mut self, relation: &str, tuple: Vec<usize>) -> Result<(), StructureError> {
        let arity = self
            .signature
            .arity(relation)
            .ok_or_else(|| StructureError::UnknownRelation(relation.to_string()))?;
        if tuple.len() != arity {
            return Err(StructureError::ArityMismatch {
                name: relation.to_string(),
                expected: arity,
                found: tuple.len(),
            });
        }
        for &e in &tuple {
            self.check_element(e)?;
        }
        self.tables.get_mut(relation).unwrap().insert(tuple);
        Ok(())
    }

    pub fn with_tuples<I>(mut self, relation: &str, tuples: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        for t in tuples {
            self.add_tuple(relation, t)?;
        }
        Ok(self)
    }

    pub fn set_constant(&mut self, name: &str, element: usize) -> Result<(), StructureError> {
        if !self.signature.has_constant(name) {
            return Err(StructureError::UnknownConstant(name.to_string()));
        }
        self.check_element(element)?;
        self.constants.insert(name.to_string(), element);
        Ok(())
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.get(name).copied()
    }

    pub fn constants(&self) -> &BTreeMap<String, usize> {
        &self.constants
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self, StructureError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.size {
            return Err(StructureError::LabelCount {
                expected: self.size,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name: the label when present, otherwise the index.
    pub fn name_of(&self, e: usize) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => e.to_string(),
        }
    }

    /// Looks an element up by label or by decimal index.
    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == name) {
                return Some(i);
            }
        }
        name.parse().ok().filter(|&i| i < self.size)
    }

    fn designate(&self, relation: &str) -> Result<String, StructureError> {
        match self.signature.arity(relation) {
            None => Err(StructureError::UnknownRelation(relation.to_string())),
            Some(2) => Ok(relation.to_string()),
            Some(_) => Err(StructureError::NotBinary(relation.to_string())),
        }
    }

    /// Marks a binary relation as the interpretation of `=`.
    pub fn designate_equality(&mut self, relation: &str) -> Result<(), StructureError> {
        self.equality = Some(self.designate(relation)?);
        Ok(())
    }

    /// Marks a binary relation as membership, read `M(z, x)` as `z ∈ x`.
    pub fn designate_membership(&mut self, relation: &str) -> Result<(), StructureError> {
        self.membership = Some(self.designate(relation)?);
        Ok(())
    }

    pub fn equality(&self) -> Option<&str> {
        self.equality.as_deref()
    }

    pub fn membership(&self) -> Option<&str> {
        self.membership.as_deref()
    }

    pub fn table(&self, relation: &str) -> Option<&BTreeSet<Vec<usize>>> {
        self.tables.get(relation)
    }

    pub fn tables(&self) -> impl Iterator<Item = (&str, usize, &BTreeSet<Vec<usize>>)> {
        self.signature
            .relations
            .iter()
            .map(move |(n, a)| (n.as_str(), *a, &self.tables[n]))
    }

    pub fn holds(&self, relation: &str, tuple: &[usize]) -> bool {
        self.tables
            .get(relation)
            .is_some_and(|t| t.contains(tuple))
    }

    /// Adds a relation symbol with the given table; used by extensions.
    pub fn extend_relation(
        &mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<(), StructureError> {
        self.signature.add_relation(name, arity)?;
        self.tables.insert(name.to_string(), BTreeSet::new());
        for t in tuples {
            self.add_tuple(name, t)?;
        }
        Ok(())
    }
}

impl fmt::Display for FiniteStructure {
    /// Prints the structure in the `.qlog` syntax, tuples in sorted order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sig: Vec<String> = self
            .signature
            .relations
            .iter()
            .map(|(n, a)| format!("{n}/{a}"))
            .collect();
        sig.extend(self.signature.constants.iter().map(|c| format!("{c}/0")));
        if sig.is_empty() {
            writeln!(f, "signature;")?;
        } else {
            writeln!(f, "signature {};", sig.join(", "))?;
        }
        writeln!(f, "domain {};", self.size)?;
        if let Some(labels) = &self.labels {
            let quoted: Vec<String> = labels.iter().map(|l| format!("{l:?}")).collect();
            writeln!(f, "labels {};", quoted.join(", "))?;
        }
        for (name, arity, table) in self.tables() {
            let items: Vec<String> = table
                .iter()
                .map(|t| {
                    if arity == 1 {
                        t[0].to_string()
                    } else {
                        let parts: Vec<String> = t.iter().map(usize::to_string).collect();
                        format!("({})", parts.join(","))
                    }
                })
                .collect();
            writeln!(f, "rel {name} = {{{}}};", items.join(", "))?;
        }
        for (c, e) in &self.constants {
            writeln!(f, "const {c} = {e};")?;
        }
        if let Some(eq) = &self.equality {
            writeln!(f, "equality {eq};")?;
        }
        if let Some(m) = &self.membership {
            writeln!(f, "membership {m};")?;
        }
        Ok(())
    }
}
