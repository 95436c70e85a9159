//! Hereditarily finite universes over a set of ur-elements.
//!
//! Level 0 is the atom set `A`; level `k+1` is every subset of the union of
//! levels `0..=k`. Atoms have no members. Member ids are assigned atoms
//! first, then sets in order of first appearance, so every member of a set
//! has a smaller id than the set itself.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{FiniteStructure, Permutation, Signature, StructureError};

/// Hard cap on materialized members.
pub const MAX_UR_MEMBERS: usize = 1 << 16;
pub const MAX_ATOMS: usize = 4;
pub const MAX_RANK: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Member {
    Atom(String),
    /// Sorted member ids.
    Set(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct UrUniverse {
    members: Vec<Member>,
    atoms: usize,
    rank: usize,
    /// `levels[k]`: ids of level k (level 0 holds the atoms).
    levels: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

/// Number of members each level would have, or `None` past `cap`.
fn level_sizes(atoms: usize, rank: usize, cap: usize) -> Option<Vec<usize>> {
    let mut sizes = vec![atoms];
    let mut sets = 0usize;
    for _ in 0..rank {
        let pool = atoms + sets;
        if pool >= usize::BITS as usize - 1 {
            return None;
        }
        let next = 1usize << pool;
        if atoms + next > cap {
            return None;
        }
        sizes.push(next);
        sets = next;
    }
    Some(sizes)
}

pub fn build_ur_universe<S: AsRef<str>>(atoms: &[S], rank: usize) -> Result<UrUniverse, StructureError> {
    if atoms.len() > MAX_ATOMS || rank > MAX_RANK {
        return Err(StructureError::UniverseGuard(format!(
            "{} atoms at rank {rank}; bounds are {MAX_ATOMS} atoms and rank {MAX_RANK}",
            atoms.len()
        )));
    }
    for (i, a) in atoms.iter().enumerate() {
        if atoms[..i].iter().any(|b| b.as_ref() == a.as_ref()) {
            return Err(StructureError::DuplicateSymbol(a.as_ref().to_string()));
        }
    }
    if level_sizes(atoms.len(), rank, MAX_UR_MEMBERS).is_none() {
        return Err(StructureError::UniverseGuard(format!(
            "{} atoms at rank {rank} exceed {MAX_UR_MEMBERS} members",
            atoms.len()
        )));
    }

    let mut members: Vec<Member> = atoms.iter().map(|a| Member::Atom(a.as_ref().to_string())).collect();
    let mut index = HashMap::new();
    let mut levels = vec![(0..atoms.len()).collect::<Vec<_>>()];
    for k in 0..rank {
        // pool = atoms ∪ sets of level k (which already contains every earlier set)
        let mut pool: Vec<usize> = (0..atoms.len()).collect();
        if k > 0 {
            pool.extend(levels[k].iter().copied());
        }
        let mut level = Vec::with_capacity(1 << pool.len());
        for mask in 0u64..(1u64 << pool.len()) {
            let mut set: Vec<usize> = pool
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &id)| id)
                .collect();
            set.sort_unstable();
            let id = *index.entry(set.clone()).or_insert_with(|| {
                members.push(Member::Set(set));
                members.len() - 1
            });
            level.push(id);
        }
        level.sort_unstable();
        levels.push(level);
    }
    Ok(UrUniverse {
        members,
        atoms: atoms.len(),
        rank,
        levels,
        index,
    })
}

impl UrUniverse {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn member(&self, id: usize) -> &Member {
        &self.members[id]
    }

    pub fn level(&self, k: usize) -> &[usize] {
        &self.levels[k]
    }

    pub fn is_atom(&self, id: usize) -> bool {
        id < self.atoms
    }

    pub fn atom_id(&self, name: &str) -> Option<usize> {
        self.members[..self.atoms]
            .iter()
            .position(|m| matches!(m, Member::Atom(a) if a == name))
    }

    /// `x ∈ y`. Atoms have no members.
    pub fn contains(&self, y: usize, x: usize) -> bool {
        match &self.members[y] {
            Member::Atom(_) => false,
            Member::Set(s) => s.binary_search(&x).is_ok(),
        }
    }

    /// Id of the set with exactly these members, if it is in the universe.
    pub fn lookup(&self, members: &[usize]) -> Option<usize> {
        let mut key = members.to_vec();
        key.sort_unstable();
        key.dedup();
        self.index.get(&key).copied()
    }

    /// Pairing: the set `{a, b}` (the singleton when `a == b`).
    pub fn pair(&self, a: usize, b: usize) -> Option<usize> {
        self.lookup(&[a, b])
    }

    pub fn render(&self, id: usize) -> String {
        match &self.members[id] {
            Member::Atom(a) => a.clone(),
            Member::Set(s) => {
                let parts: Vec<String> = s.iter().map(|&m| self.render(m)).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }

    /// The universe as a relational structure: `In(x, y)` for `x ∈ y` and
    /// unary `Atom` marking ur-elements. Labels are the rendered members.
    pub fn membership_structure(&self) -> FiniteStructure {
        let sig = Signature::new()
            .with_relation("In", 2)
            .unwrap()
            .with_relation("Atom", 1)
            .unwrap();
        let mut s = FiniteStructure::new(sig, self.len());
        for y in 0..self.len() {
            if let Member::Set(set) = &self.members[y] {
                for &x in set {
                    s.add_tuple("In", vec![x, y]).unwrap();
                }
            }
        }
        for a in 0..self.atoms {
            s.add_tuple("Atom", vec![a]).unwrap();
        }
        let labels: Vec<String> = (0..self.len()).map(|i| self.render(i)).collect();
        let mut s = s.with_labels(labels).unwrap();
        s.designate_membership("In").unwrap();
        s
    }
}

impl fmt::Display for UrUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, level) in self.levels.iter().enumerate() {
            writeln!(f, "level {k}: {} members", level.len())?;
        }
        Ok(())
    }
}

/// A map on every member of a universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniverseMap {
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCheck {
    pub bijective_on_levels: bool,
    pub membership_preserved: bool,
    /// Pairs `(x, y)` where `x ∈ y` and `π̂x ∈ π̂y` disagree.
    pub violations: Vec<(usize, usize)>,
}

impl ExtensionCheck {
    pub fn holds(&self) -> bool {
        self.bijective_on_levels && self.membership_preserved
    }
}

impl UniverseMap {
    pub fn apply(&self, id: usize) -> usize {
        self.images[id]
    }

    /// Exhaustive check over every level and every member pair.
    pub fn verify(&self, u: &UrUniverse) -> ExtensionCheck {
        let bijective_on_levels = u.levels.iter().all(|level| {
            let mut img: Vec<usize> = level.iter().map(|&x| self.images[x]).collect();
            img.sort_unstable();
            img == *level
        });
        let mut violations = Vec::new();
        for y in 0..u.len() {
            for x in 0..u.len() {
                if u.contains(y, x) != u.contains(self.images[y], self.images[x]) {
                    violations.push((x, y));
                }
            }
        }
        ExtensionCheck {
            bijective_on_levels,
            membership_preserved: violations.is_empty(),
            violations,
        }
    }
}

/// Extends a permutation of the atoms to the whole universe by
/// `π̂(x) = {π̂(y) : y ∈ x}`.
pub fn extend_permutation(u: &UrUniverse, pi: &Permutation) -> Result<UniverseMap, StructureError> {
    if pi.len() != u.atoms {
        return Err(StructureError::PermutationSize {
            expected: u.atoms,
            found: pi.len(),
        });
    }
    let mut images = Vec::with_capacity(u.len());
    for (id, m) in u.members.iter().enumerate() {
        let img = match m {
            Member::Atom(_) => pi.apply(id),
            Member::Set(set) => {
                let mapped: Vec<usize> = set.iter().map(|&y| images[y]).collect();
                u.lookup(&mapped)
                    .expect("universe levels are closed under atom permutations")
            }
        };
        images.push(img);
    }
    Ok(UniverseMap { images })
}

/// The property `I_a(x) :⟺ x ∈ {a}` and where it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityWitness {
    pub atom: String,
    pub atom_id: usize,
    /// Id of `{a}`, obtained by pairing `a` with itself.
    pub singleton_id: usize,
    pub singleton: String,
    /// Every member satisfying `I_a`.
    pub satisfied_by: Vec<usize>,
    /// `I_a` holds of `a` and of nothing else, so `a` is distinct from every
    /// other member of the universe.
    pub distinct_from_all: bool,
}

pub fn identity_property_witness(u: &UrUniverse, atom: &str) -> Result<IdentityWitness, StructureError> {
    let atom_id = u
        .atom_id(atom)
        .ok_or_else(|| StructureError::UnknownConstant(atom.to_string()))?;
    if u.rank == 0 {
        return Err(StructureError::UniverseGuard(
            "rank 0 has no sets, so {a} cannot be formed".to_string(),
        ));
    }
    let singleton_id = u.pair(atom_id, atom_id).expect("{a} is in level 1");
    let satisfied_by: Vec<usize> = (0..u.len()).filter(|&x| u.contains(singleton_id, x)).collect();
    Ok(IdentityWitness {
        atom: atom.to_string(),
        atom_id,
        singleton_id,
        singleton: u.render(singleton_id),
        distinct_from_all: satisfied_by == [atom_id],
        satisfied_by,
    })
}
