use std::collections::BTreeSet;

use itertools::Itertools;

use super::{FiniteStructure, Permutation, StructureError};

/// Domain size beyond which a search is flagged as costly.
pub const DEFAULT_MAX_DOMAIN: usize = 10;

/// The automorphism group of a structure, identity first, the rest in
/// lexicographic order of their image lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphisms {
    pub group: Vec<Permutation>,
    /// Set when the domain exceeded the configured bound. The search is
    /// still exact.
    pub warning: Option<String>,
}

impl Automorphisms {
    pub fn len(&self) -> usize {
        self.group.len()
    }

    pub fn is_empty(&self) -> bool {
        self.group.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.len() == 1
    }

    /// Closed under composition and inverse, and contains the identity.
    pub fn is_group(&self) -> bool {
        let set: BTreeSet<&Permutation> = self.group.iter().collect();
        let Some(n) = self.group.first().map(Permutation::len) else {
            return false;
        };
        set.contains(&Permutation::identity(n))
            && self.group.iter().all(|p| set.contains(&p.inverse()))
            && self
                .group
                .iter()
                .cartesian_product(self.group.iter())
                .all(|(p, q)| set.contains(&p.compose(q)))
    }
}

/// Checks a candidate map against every table and constant.
pub fn is_automorphism(s: &FiniteStructure, h: &Permutation) -> bool {
    if h.len() != s.size() {
        return false;
    }
    if s.constants().values().any(|&c| h.apply(c) != c) {
        return false;
    }
    s.tables().all(|(_, _, table)| {
        table.iter().all(|t| {
            let image: Vec<usize> = t.iter().map(|&e| h.apply(e)).collect();
            table.contains(&image)
        })
    })
}

/// Exhaustive n! enumeration. Kept as the reference the pruned search is
/// validated against.
pub fn automorphisms_naive(s: &FiniteStructure) -> Vec<Permutation> {
    let n = s.size();
    let mut out: Vec<Permutation> = (0..n)
        .permutations(n)
        .map(|v| Permutation::from_images(v).expect("itertools yields bijections"))
        .filter(|h| is_automorphism(s, h))
        .collect();
    sort_group(&mut out);
    out
}

fn sort_group(group: &mut [Permutation]) {
    // identity is lexicographically smallest, so a plain sort puts it first
    group.sort();
}

pub fn automorphisms(s: &FiniteStructure) -> Automorphisms {
    automorphisms_with(s, DEFAULT_MAX_DOMAIN)
}

/// Backtracking over partial maps. Candidates for each element are pruned by
/// an occurrence-count invariant, and every tuple becomes checkable as soon
/// as its largest element is assigned.
pub fn automorphisms_with(s: &FiniteStructure, max_domain: usize) -> Automorphisms {
    let n = s.size();
    let warning = (n > max_domain).then(|| {
        format!("domain of size {n} exceeds bound {max_domain}; exact search may be slow")
    });

    let invariants: Vec<Vec<usize>> = (0..n).map(|e| invariant(s, e)).collect();
    let fixed: Vec<bool> = (0..n)
        .map(|e| s.constants().values().any(|&c| c == e))
        .collect();

    // tuples grouped by their largest element
    let mut by_max: Vec<Vec<(&BTreeSet<Vec<usize>>, &Vec<usize>)>> = vec![Vec::new(); n];
    for (_, _, table) in s.tables() {
        for t in table {
            let m = *t.iter().max().expect("arity >= 1");
            by_max[m].push((table, t));
        }
    }

    let mut search = Search {
        n,
        invariants: &invariants,
        fixed: &fixed,
        by_max: &by_max,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    search.extend(0);
    let mut group = search.found;
    sort_group(&mut group);
    Automorphisms { group, warning }
}

struct Search<'a> {
    n: usize,
    invariants: &'a [Vec<usize>],
    fixed: &'a [bool],
    by_max: &'a [Vec<(&'a BTreeSet<Vec<usize>>, &'a Vec<usize>)>],
    image: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Permutation>,
}

impl Search<'_> {
    fn extend(&mut self, x: usize) {
        if x == self.n {
            self.found
                .push(Permutation::from_images(self.image.clone()).expect("search builds bijections"));
            return;
        }
        for y in 0..self.n {
            if self.used[y] || self.invariants[x] != self.invariants[y] {
                continue;
            }
            if self.fixed[x] && x != y {
                continue;
            }
            self.image[x] = y;
            if self.consistent(x) {
                self.used[y] = true;
                self.extend(x + 1);
                self.used[y] = false;
            }
        }
        self.image[x] = usize::MAX;
    }

    fn consistent(&self, x: usize) -> bool {
        self.by_max[x].iter().all(|(table, t)| {
            let mapped: Vec<usize> = t.iter().map(|&e| self.image[e]).collect();
            table.contains(&mapped)
        })
    }
}

/// Per relation and argument position, how many tuples the element occurs in.
fn invariant(s: &FiniteStructure, e: usize) -> Vec<usize> {
    let mut v = Vec::new();
    for (_, arity, table) in s.tables() {
        for pos in 0..arity {
            v.push(table.iter().filter(|t| t[pos] == e).count());
        }
        // diagonal occurrences
        v.push(table.iter().filter(|t| t.iter().all(|&x| x == e)).count());
    }
    v
}

pub fn is_rigid(s: &FiniteStructure) -> bool {
    automorphisms(s).is_trivial()
}

/// Orbits of the automorphism group, each sorted, ordered by least element.
pub fn orbits(s: &FiniteStructure) -> Vec<Vec<usize>> {
    orbits_of(s.size(), &automorphisms(s).group)
}

pub(crate) fn orbits_of(n: usize, group: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for e in 0..n {
        if seen[e] {
            continue;
        }
        let orbit: BTreeSet<usize> = group.iter().map(|h| h.apply(e)).chain([e]).collect();
        for &x in &orbit {
            seen[x] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

pub fn orbit_indiscernible(s: &FiniteStructure, a: usize, b: usize) -> Result<bool, StructureError> {
    for e in [a, b] {
        if e >= s.size() {
            return Err(StructureError::OutOfDomain {
                element: e,
                size: s.size(),
            });
        }
    }
    Ok(automorphisms(s).group.iter().any(|h| h.apply(a) == b))
}

/// Extends a structure to a rigid one on the same domain.
///
/// Adds `ceil(log2 n)` unary predicates, predicate `k` holding of the
/// elements whose index has bit `k` set. Distinct elements then differ on
/// some predicate, so only the identity survives. Already-rigid structures
/// come back unchanged.
pub fn rigidify(s: &FiniteStructure) -> FiniteStructure {
    if is_rigid(s) {
        return s.clone();
    }
    let n = s.size();
    let bits = usize::BITS - (n - 1).leading_zeros();
    let mut out = s.clone();
    for k in 0..bits {
        let name = out.signature().fresh_name(&format!("bit{k}"));
        let members = (0..n).filter(|e| e >> k & 1 == 1).map(|e| vec![e]);
        out.extend_relation(&name, 1, members.collect::<Vec<_>>())
            .expect("fresh unary relation over the domain");
    }
    out
}

/// Same domain, constants and designations, and every original table kept verbatim.
pub fn is_conservative_extension(original: &FiniteStructure, extended: &FiniteStructure) -> bool {
    original.size() == extended.size()
        && original.constants() == extended.constants()
        && original.tables().all(|(name, arity, table)| {
            extended.signature().arity(name) == Some(arity) && extended.table(name) == Some(table)
        })
}
