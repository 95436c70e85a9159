use rand::seq::IndexedRandom;
use rand::Rng;

use super::{Kind, MObject, QSet, Quantity};

/// Shape bounds for randomly generated quasi-sets.
#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub max_kinds: usize,
    pub max_multiplicity: usize,
    pub max_depth: usize,
    pub max_objects: usize,
    pub max_nested: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_kinds: 4,
            max_multiplicity: 5,
            max_depth: 2,
            max_objects: 2,
            max_nested: 2,
        }
    }
}

const LABELS: &[&str] = &["Alice", "Bob", "Carol"];

/// The kind pool random quasi-sets draw from. Always the same profiles, so
/// generated quasi-sets never conflict with one another.
pub fn kind_pool() -> Vec<Kind> {
    vec![
        Kind::electron(),
        Kind::positron(),
        Kind::new("proton")
            .with_attribute("charge", Quantity::parse("4.80320451e-10 esu").unwrap())
            .with_attribute("spin", Quantity::parse("1/2 hbar").unwrap()),
        Kind::new("photon").with_attribute("spin", Quantity::parse("1 hbar").unwrap()),
    ]
}

pub fn random_qset<R: Rng + ?Sized>(rng: &mut R, params: &GenParams) -> QSet {
    let pool = kind_pool();
    let kinds = &pool[..params.max_kinds.min(pool.len())];
    build(rng, params, kinds, params.max_depth)
}

fn build<R: Rng + ?Sized>(rng: &mut R, params: &GenParams, kinds: &[Kind], depth: usize) -> QSet {
    let mut q = QSet::empty();
    for k in kinds {
        if rng.random_bool(0.5) {
            let n = rng.random_range(0..=params.max_multiplicity);
            q = q.with_m(k.clone(), n).expect("pool kinds are consistent");
        }
    }
    for _ in 0..rng.random_range(0..=params.max_objects) {
        q = q.with_object(MObject::new(*LABELS.choose(rng).unwrap()));
    }
    if depth > 0 {
        for _ in 0..rng.random_range(0..=params.max_nested) {
            let inner = build(rng, params, kinds, depth - 1);
            let copies = rng.random_range(1..=2);
            q = q.with_nested(inner, copies).expect("pool kinds are consistent");
        }
    }
    q
}
