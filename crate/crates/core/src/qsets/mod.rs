//! Quasi-sets: collections whose m-object members carry a kind and a
//! multiplicity but no label, alongside classical M-objects and nested
//! quasi-sets.
//!
//! A [`QSet`] is kept in canonical form at all times: zero multiplicities are
//! dropped and nested members that are indistinguishable are merged into one
//! entry with a multiplicity. Indistinguishability is therefore structural
//! equality of canonical forms, and the derived `Ord` gives the deterministic
//! ordering used by the text format.
//!
//! Nothing in this module hands out a handle to an individual m-object. The
//! m-part is only observable as `(kind, multiplicity)` pairs.

mod gen;
mod individuality;
mod kind;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

pub use gen::{kind_pool, random_qset, GenParams};
pub use individuality::{classify_individuality, IndividualityCategory, IndividualityVerdict};
pub use kind::{format_exact, parse_exact, Kind, Quantity, Universe};
pub use text::{parse_document, parse_qset, QSetDocument};

use crate::lex::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QSetError {
    #[error("kind `{0}` is declared with conflicting attributes")]
    KindConflict(String),
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("malformed number `{0}`")]
    BadNumber(String),
    #[error("power quasi-set guard: {0}")]
    PowersetGuard(String),
    #[error("no quasi-set named `{0}`")]
    UnknownName(String),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}

/// A classical individual, identified by its label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MObject(String);

impl MObject {
    pub fn new(label: impl Into<String>) -> Self {
        MObject(label.into())
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

/// How the two operands of a union relate to each other.
///
/// Without labels there is no way to tell from the operands alone whether an
/// electron counted in `a` is also counted in `b`, so the caller says so.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// The operands describe disjoint collections; multiplicities add.
    Disjoint,
    /// The operands may describe the same objects; multiplicities take the max.
    Overlapping,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QSet {
    m_part: BTreeMap<Kind, usize>,
    objects: BTreeSet<MObject>,
    nested: BTreeMap<QSet, usize>,
}

impl QSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Adds `count` m-objects of `kind`.
    pub fn with_m(mut self, kind: Kind, count: usize) -> Result<Self, QSetError> {
        self.check_kind(&kind)?;
        if count > 0 {
            *self.m_part.entry(kind).or_insert(0) += count;
        }
        Ok(self)
    }

    pub fn with_object(mut self, obj: MObject) -> Self {
        self.objects.insert(obj);
        self
    }

    /// Adds `count` copies of a nested quasi-set. Copies of indistinguishable
    /// quasi-sets merge into one entry.
    pub fn with_nested(mut self, q: QSet, count: usize) -> Result<Self, QSetError> {
        for k in q.kinds() {
            self.check_kind(k)?;
        }
        if count > 0 {
            *self.nested.entry(q).or_insert(0) += count;
        }
        Ok(self)
    }

    fn check_kind(&self, kind: &Kind) -> Result<(), QSetError> {
        match self.kinds().into_iter().find(|k| k.name() == kind.name()) {
            Some(k) if k != kind => Err(QSetError::KindConflict(kind.name().to_string())),
            _ => Ok(()),
        }
    }

    /// Multiplicity of each kind in the m-part, in kind-name order.
    pub fn m_part(&self) -> impl Iterator<Item = (&Kind, usize)> {
        self.m_part.iter().map(|(k, &n)| (k, n))
    }

    pub fn multiplicity(&self, kind_name: &str) -> usize {
        self.m_part
            .iter()
            .find(|(k, _)| k.name() == kind_name)
            .map_or(0, |(_, &n)| n)
    }

    pub fn objects(&self) -> impl Iterator<Item = &MObject> {
        self.objects.iter()
    }

    /// Nested quasi-sets with their multiplicities.
    pub fn nested(&self) -> impl Iterator<Item = (&QSet, usize)> {
        self.nested.iter().map(|(q, &n)| (q, n))
    }

    pub fn is_empty(&self) -> bool {
        self.m_part.is_empty() && self.objects.is_empty() && self.nested.is_empty()
    }

    /// True when the quasi-set has no m-objects anywhere inside it.
    pub fn is_classical(&self) -> bool {
        self.m_part.is_empty() && self.nested.keys().all(QSet::is_classical)
    }

    /// Nesting depth; a flat quasi-set has depth 0.
    pub fn depth(&self) -> usize {
        self.nested.keys().map(|q| q.depth() + 1).max().unwrap_or(0)
    }

    /// Every kind occurring at any depth.
    pub fn kinds(&self) -> Vec<&Kind> {
        let mut out: Vec<&Kind> = self.m_part.keys().collect();
        for q in self.nested.keys() {
            out.extend(q.kinds());
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Quasi-cardinal: M-objects plus m-object multiplicities plus nested
/// members, each nested quasi-set counting once per copy.
pub fn qcard(q: &QSet) -> usize {
    q.objects.len() + q.m_part.values().sum::<usize>() + q.nested.values().sum::<usize>()
}

fn check_compatible(a: &QSet, b: &QSet) -> Result<(), QSetError> {
    let mut seen: BTreeMap<&str, &Kind> = BTreeMap::new();
    for k in a.kinds().into_iter().chain(b.kinds()) {
        if let Some(prev) = seen.insert(k.name(), k) {
            if prev != k {
                return Err(QSetError::KindConflict(k.name().to_string()));
            }
        }
    }
    Ok(())
}

fn merge_counts<K: Ord + Clone>(
    a: &BTreeMap<K, usize>,
    b: &BTreeMap<K, usize>,
    f: impl Fn(usize, usize) -> usize,
) -> BTreeMap<K, usize> {
    let keys: BTreeSet<&K> = a.keys().chain(b.keys()).collect();
    keys.into_iter()
        .filter_map(|k| {
            let n = f(
                a.get(k).copied().unwrap_or(0),
                b.get(k).copied().unwrap_or(0),
            );
            (n > 0).then(|| (k.clone(), n))
        })
        .collect()
}

pub fn qunion(a: &QSet, b: &QSet, source: Source) -> Result<QSet, QSetError> {
    check_compatible(a, b)?;
    let combine = match source {
        Source::Disjoint => |x: usize, y: usize| x + y,
        Source::Overlapping => |x: usize, y: usize| x.max(y),
    };
    Ok(QSet {
        m_part: merge_counts(&a.m_part, &b.m_part, combine),
        objects: a.objects.union(&b.objects).cloned().collect(),
        nested: merge_counts(&a.nested, &b.nested, combine),
    })
}

pub fn qintersection(a: &QSet, b: &QSet) -> Result<QSet, QSetError> {
    check_compatible(a, b)?;
    Ok(QSet {
        m_part: merge_counts(&a.m_part, &b.m_part, usize::min),
        objects: a.objects.intersection(&b.objects).cloned().collect(),
        nested: merge_counts(&a.nested, &b.nested, usize::min),
    })
}

/// Same m-part, same labeled members, and nested members matched up to
/// indistinguishability with equal multiplicities.
pub fn indistinguishable(a: &QSet, b: &QSet) -> bool {
    // canonical form makes this plain equality
    a == b
}

/// `{κ:1}`. Which m-object it holds is not a question the API can answer.
pub fn strong_singleton(universe: &Universe, kind_name: &str) -> Result<QSet, QSetError> {
    let kind = universe.kind(kind_name)?.clone();
    QSet::empty().with_m(kind, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowersetLimits {
    pub max_depth: usize,
    pub max_members: u128,
}

impl Default for PowersetLimits {
    fn default() -> Self {
        PowersetLimits {
            max_depth: 3,
            max_members: 1 << 16,
        }
    }
}

/// The power quasi-set together with both candidate quasi-cardinals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerQSet {
    pub family: QSet,
    /// `2^|M| * prod (n+1)` over kinds and nested entries; equals `qcard(family)`.
    pub occupancy_qcard: u128,
    /// `2^qcard(q)`, the value the full axiomatic theory assigns.
    pub axiomatic_qcard: BigUint,
}

impl PowerQSet {
    pub fn discrepant(&self) -> bool {
        BigUint::from(self.occupancy_qcard) != self.axiomatic_qcard
    }
}

/// Predicted number of sub-quasi-sets, without enumerating them.
pub fn occupancy_powerset_size(q: &QSet) -> u128 {
    let classical = 1u128.checked_shl(q.objects.len() as u32).unwrap_or(u128::MAX);
    q.m_part
        .values()
        .chain(q.nested.values())
        .fold(classical, |acc, &n| acc.saturating_mul(n as u128 + 1))
}

pub fn qpowerset(q: &QSet, limits: PowersetLimits) -> Result<PowerQSet, QSetError> {
    if q.depth() > limits.max_depth {
        return Err(QSetError::PowersetGuard(format!(
            "nesting depth {} exceeds bound {}",
            q.depth(),
            limits.max_depth
        )));
    }
    let predicted = occupancy_powerset_size(q);
    if predicted > limits.max_members {
        return Err(QSetError::PowersetGuard(format!(
            "{predicted} sub-quasi-sets exceed bound {}",
            limits.max_members
        )));
    }

    let mut subs = vec![QSet::empty()];
    for obj in &q.objects {
        let with: Vec<QSet> = subs
            .iter()
            .map(|s| s.clone().with_object(obj.clone()))
            .collect();
        subs.extend(with);
    }
    for (kind, &n) in &q.m_part {
        subs = subs
            .into_iter()
            .flat_map(|s| {
                (0..=n).map(move |c| {
                    let mut t = s.clone();
                    if c > 0 {
                        t.m_part.insert(kind.clone(), c);
                    }
                    t
                })
            })
            .collect();
    }
    for (inner, &n) in &q.nested {
        subs = subs
            .into_iter()
            .flat_map(|s| {
                (0..=n).map(move |c| {
                    let mut t = s.clone();
                    if c > 0 {
                        t.nested.insert(inner.clone(), c);
                    }
                    t
                })
            })
            .collect();
    }

    let family = QSet {
        m_part: BTreeMap::new(),
        objects: BTreeSet::new(),
        nested: subs.into_iter().map(|s| (s, 1)).collect(),
    };
    debug_assert_eq!(qcard(&family) as u128, predicted);
    Ok(PowerQSet {
        occupancy_qcard: predicted,
        axiomatic_qcard: BigUint::from(1u8) << qcard(q),
        family,
    })
}

impl fmt::Display for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_qset(f, self)
    }
}
