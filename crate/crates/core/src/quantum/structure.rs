//! The QM structure: a quasi-set of systems, a family of spaces, observables
//! and unitaries on each space, and a finite Borel algebra.
//!
//! JSON layout (matrices row-major; an entry is a real number or `[re, im]`):
//!
//! ```json
//! {
//!   "universe": "universe { kind electron { spin: 1/2 } }",
//!   "systems": { "qset": "qset { m: { electron: 2 } }" },
//!   "spaces": [ { "name": "spin", "dim": 2 } ],
//!   "system_space": { "electron": "spin" },
//!   "observables": [ { "name": "Sz", "space": "spin", "matrix": [[1, 0], [0, -1]] } ],
//!   "unitaries": [ { "name": "X", "space": "spin", "matrix": [[0, 1], [1, 0]] } ],
//!   "states": [ { "name": "up", "space": "spin", "vector": [1, 0] } ],
//!   "borel": [ "{1}", "{-1}" ]
//! }
//! ```
//!
//! `universe` is optional and defaults to the built-in particle kinds.
//! `systems` may instead be `{ "labeled": ["a", "b"] }`, which loads but fails
//! validation. `system_space` keys are kind names, or labels for labeled
//! systems.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::linalg::{born_probability, evolve, hermitian_deviation, norm_sq, unitary_deviation};
use super::{BorelAlgebra, BorelSet, CMatrix, CVector, QuantumError, HERMITIAN_TOL, NORM_TOL, UNITARY_TOL};
use crate::qsets::{self, kind_pool, QSet, Universe};

#[derive(Clone, Debug, PartialEq)]
pub enum Systems {
    Quasi(QSet),
    /// Systems given as individually named members.
    Labeled(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Space {
    pub name: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedOperator {
    pub name: String,
    pub space: usize,
    pub matrix: CMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedState {
    pub name: String,
    pub space: usize,
    pub vector: CVector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QmStructure {
    pub universe: Universe,
    pub systems: Systems,
    pub spaces: Vec<Space>,
    pub system_space: BTreeMap<String, usize>,
    pub observables: Vec<NamedOperator>,
    pub unitaries: Vec<NamedOperator>,
    pub states: Vec<NamedState>,
    pub borel: Vec<BorelSet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QmFile {
    universe: Option<String>,
    systems: SystemsFile,
    spaces: Vec<SpaceFile>,
    #[serde(default)]
    system_space: BTreeMap<String, String>,
    #[serde(default)]
    observables: Vec<OperatorFile>,
    #[serde(default)]
    unitaries: Vec<OperatorFile>,
    #[serde(default)]
    states: Vec<StateFile>,
    #[serde(default)]
    borel: Vec<String>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum SystemsFile {
    Qset(String),
    Labeled(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    name: String,
    dim: usize,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Pair([f64; 2]),
}

impl Entry {
    fn value(&self) -> Complex64 {
        match *self {
            Entry::Real(re) => Complex64::new(re, 0.0),
            Entry::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorFile {
    name: String,
    space: String,
    matrix: Vec<Vec<Entry>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    name: String,
    space: String,
    vector: Vec<Entry>,
}

fn default_universe() -> Universe {
    let mut u = Universe::new();
    for k in kind_pool() {
        u.declare(k).expect("built-in kinds are consistent");
    }
    u
}

impl QmStructure {
    pub fn from_json(text: &str) -> Result<QmStructure, QuantumError> {
        let file: QmFile = serde_json::from_str(text).map_err(|e| QuantumError::Format(e.to_string()))?;
        let universe = match &file.universe {
            None => default_universe(),
            Some(src) => {
                qsets::parse_document(src)
                    .map_err(|e| QuantumError::Format(format!("universe: {e}")))?
                    .universe
            }
        };
        let systems = match file.systems {
            SystemsFile::Qset(src) => Systems::Quasi(
                qsets::parse_qset(&src, &universe).map_err(|e| QuantumError::Format(format!("systems: {e}")))?,
            ),
            SystemsFile::Labeled(labels) => Systems::Labeled(labels),
        };
        let spaces: Vec<Space> = file
            .spaces
            .into_iter()
            .map(|s| Space { name: s.name, dim: s.dim })
            .collect();
        let space_index = |name: &str| -> Result<usize, QuantumError> {
            spaces
                .iter()
                .position(|s| s.name == name)
                .ok_or_else(|| QuantumError::Unknown {
                    what: "space",
                    name: name.to_string(),
                })
        };
        let operator = |o: OperatorFile| -> Result<NamedOperator, QuantumError> {
            let n = o.matrix.len();
            if o.matrix.iter().any(|row| row.len() != n) {
                return Err(QuantumError::Format(format!("matrix `{}` is not square", o.name)));
            }
            Ok(NamedOperator {
                space: space_index(&o.space)?,
                matrix: CMatrix::from_fn(n, n, |i, j| o.matrix[i][j].value()),
                name: o.name,
            })
        };
        let observables = file.observables.into_iter().map(operator).collect::<Result<_, _>>()?;
        let unitaries = file.unitaries.into_iter().map(operator).collect::<Result<_, _>>()?;
        let states = file
            .states
            .into_iter()
            .map(|s| {
                Ok(NamedState {
                    space: space_index(&s.space)?,
                    vector: CVector::from_iterator(s.vector.len(), s.vector.iter().map(Entry::value)),
                    name: s.name,
                })
            })
            .collect::<Result<_, QuantumError>>()?;
        let system_space = file
            .system_space
            .iter()
            .map(|(sys, sp)| Ok((sys.clone(), space_index(sp)?)))
            .collect::<Result<_, QuantumError>>()?;
        let borel = file.borel.iter().map(|b| BorelSet::parse(b)).collect::<Result<_, _>>()?;
        Ok(QmStructure {
            universe,
            systems,
            spaces,
            system_space,
            observables,
            unitaries,
            states,
            borel,
        })
    }

    /// Names by which systems are mapped to spaces: kinds of the m-part, or
    /// labels when systems were given as a labeled set.
    pub fn system_names(&self) -> BTreeSet<String> {
        match &self.systems {
            Systems::Quasi(q) => q.m_part().map(|(k, _)| k.name().to_string()).collect(),
            Systems::Labeled(labels) => labels.iter().cloned().collect(),
        }
    }

    pub fn algebra(&self) -> BorelAlgebra {
        BorelAlgebra::generated_by(&self.borel)
    }

    pub fn space_of(&self, system: &str) -> Result<usize, QuantumError> {
        if !self.system_names().contains(system) {
            return Err(QuantumError::Unknown {
                what: "system",
                name: system.to_string(),
            });
        }
        self.system_space
            .get(system)
            .copied()
            .ok_or_else(|| QuantumError::UnmappedSystem(system.to_string()))
    }

    fn find<'a, T>(items: &'a [T], name: &str, what: &'static str, key: impl Fn(&T) -> &str) -> Result<&'a T, QuantumError> {
        items.iter().find(|t| key(t) == name).ok_or_else(|| QuantumError::Unknown {
            what,
            name: name.to_string(),
        })
    }

    pub fn observable(&self, name: &str) -> Result<&NamedOperator, QuantumError> {
        Self::find(&self.observables, name, "observable", |o| &o.name)
    }

    pub fn unitary(&self, name: &str) -> Result<&NamedOperator, QuantumError> {
        Self::find(&self.unitaries, name, "unitary", |o| &o.name)
    }

    pub fn state(&self, name: &str) -> Result<&NamedState, QuantumError> {
        Self::find(&self.states, name, "state", |s| &s.name)
    }

    fn on_space(&self, space: usize, name: &str, found: usize) -> Result<(), QuantumError> {
        if space != found {
            return Err(QuantumError::Format(format!(
                "`{name}` lives on space `{}`, not `{}`",
                self.spaces[found].name, self.spaces[space].name
            )));
        }
        Ok(())
    }

    /// `P(ψ, A, Δ)` for a system: the system fixes the space, and the
    /// observable, state and `Δ` must belong to it and to the Borel algebra.
    pub fn probability(&self, system: &str, observable: &str, state: &str, delta: &BorelSet) -> Result<f64, QuantumError> {
        let space = self.space_of(system)?;
        let a = self.observable(observable)?;
        let psi = self.state(state)?;
        self.on_space(space, observable, a.space)?;
        self.on_space(space, state, psi.space)?;
        if !self.algebra().contains(delta) {
            return Err(QuantumError::NotInAlgebra(delta.to_string()));
        }
        born_probability(&psi.vector, &a.matrix, delta)
    }

    pub fn evolve_state(&self, state: &str, unitary: &str) -> Result<CVector, QuantumError> {
        let psi = self.state(state)?;
        let u = self.unitary(unitary)?;
        self.on_space(psi.space, unitary, u.space)?;
        evolve(&psi.vector, &u.matrix)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QmCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QmReport {
    pub checks: Vec<QmCheck>,
    pub diagnostics: Vec<String>,
}

impl QmReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &QmCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const CLASSICAL_SYSTEMS: &str = "classical set where quasi-set required";

pub fn validate_qm_structure(q: &QmStructure) -> QmReport {
    let mut checks = Vec::new();
    let mut diagnostics = Vec::new();
    let mut check = |name: String, passed: bool, detail: String| checks.push(QmCheck { name, passed, detail });

    match &q.systems {
        Systems::Quasi(qs) if !qs.is_classical() || qs.is_empty() => {
            let n: usize = qs.m_part().map(|(_, c)| c).sum();
            check(
                "systems-form-quasi-set".into(),
                true,
                format!("{n} m-object systems, described only by kind and multiplicity"),
            );
        }
        Systems::Quasi(qs) => {
            let labels: Vec<&str> = qs.objects().map(|o| o.label()).collect();
            diagnostics.push(format!("{CLASSICAL_SYSTEMS}: systems {labels:?} carry labels"));
            check("systems-form-quasi-set".into(), false, "only labeled M-objects".into());
        }
        Systems::Labeled(labels) => {
            diagnostics.push(format!("{CLASSICAL_SYSTEMS}: systems {labels:?} carry labels"));
            check("systems-form-quasi-set".into(), false, "systems given as a labeled set".into());
        }
    }

    let names: BTreeSet<&str> = q.spaces.iter().map(|s| s.name.as_str()).collect();
    let index_ok = !q.spaces.is_empty() && names.len() == q.spaces.len() && q.spaces.iter().all(|s| s.dim > 0);
    check(
        "index-sets".into(),
        index_ok,
        format!(
            "{} spaces, {} observables, {} unitaries; names unique and dimensions positive: {index_ok}",
            q.spaces.len(),
            q.observables.len(),
            q.unitaries.len()
        ),
    );

    for (family, ops, unitary) in [("observable", &q.observables, false), ("unitary", &q.unitaries, true)] {
        let mut seen = BTreeSet::new();
        for op in ops {
            let dim = q.spaces[op.space].dim;
            let name = format!("{family}:{}", op.name);
            if !seen.insert(&op.name) {
                check(name.clone(), false, "duplicate name".into());
            }
            if op.matrix.nrows() != dim {
                check(name, false, format!("is {0}x{0} on a space of dimension {dim}", op.matrix.nrows()));
                continue;
            }
            let (dev, tol, what) = if unitary {
                (unitary_deviation(&op.matrix), UNITARY_TOL, "|U*U - I|")
            } else {
                (hermitian_deviation(&op.matrix), HERMITIAN_TOL, "|A - A*|")
            };
            check(name, dev <= tol, format!("max {what} entry {dev:.3e} (tolerance {tol:e})"));
        }
    }

    for s in &q.states {
        let dim = q.spaces[s.space].dim;
        let name = format!("state:{}", s.name);
        if s.vector.len() != dim {
            check(name, false, format!("has {} components on a space of dimension {dim}", s.vector.len()));
            continue;
        }
        let n = norm_sq(&s.vector);
        check(name, (n - 1.0).abs() <= NORM_TOL, format!("squared norm {n}"));
    }

    let systems = q.system_names();
    let unmapped: Vec<&String> = systems.iter().filter(|s| !q.system_space.contains_key(*s)).collect();
    let stray: Vec<&String> = q.system_space.keys().filter(|s| !systems.contains(*s)).collect();
    check(
        "system-space-map".into(),
        unmapped.is_empty() && stray.is_empty(),
        format!("unmapped systems {unmapped:?}, entries for unknown systems {stray:?}"),
    );

    check(
        "borel-algebra".into(),
        true,
        format!("{} generators, {} atoms", q.borel.len(), q.algebra().atoms().len()),
    );

    QmReport { checks, diagnostics }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const ELECTRON_PAIR: &str = r#"{
      "systems": { "qset": "qset { m: { electron: 2 } }" },
      "spaces": [ { "name": "spin", "dim": 2 } ],
      "system_space": { "electron": "spin" },
      "observables": [ { "name": "Sz", "space": "spin", "matrix": [[0.5, 0], [0, -0.5]] },
                       { "name": "Sy", "space": "spin", "matrix": [[0, [0, -0.5]], [[0, 0.5], 0]] } ],
      "unitaries": [ { "name": "X", "space": "spin", "matrix": [[0, 1], [1, 0]] } ],
      "states": [ { "name": "up", "space": "spin", "vector": [1, 0] },
                  { "name": "plus", "space": "spin", "vector": [0.7071067811865476, 0.7071067811865476] } ],
      "borel": [ "{0.5}", "{-0.5}" ]
    }"#;

    #[test]
    fn electron_pair_is_well_formed() {
        let q = QmStructure::from_json(ELECTRON_PAIR).unwrap();
        let r = validate_qm_structure(&q);
        assert!(r.passed(), "{r:#?}");
        assert!(r.diagnostics.is_empty());
        let p = q.probability("electron", "Sz", "plus", &BorelSet::point(0.5)).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        let p = q.probability("electron", "Sz", "up", &BorelSet::point(0.5)).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!(matches!(
            q.probability("electron", "Sz", "up", &BorelSet::parse("[0, 1]").unwrap()),
            Err(QuantumError::NotInAlgebra(_))
        ));
        assert!(matches!(
            q.probability("positron", "Sz", "up", &BorelSet::real_line()),
            Err(QuantumError::Unknown { .. })
        ));
        let down = q.evolve_state("up", "X").unwrap();
        assert!((down[1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hermiticity_violation_is_reported() {
        let src = ELECTRON_PAIR.replace("[[0.5, 0], [0, -0.5]]", "[[0.5, 1], [0, -0.5]]");
        let r = validate_qm_structure(&QmStructure::from_json(&src).unwrap());
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["observable:Sz"]);
    }

    #[test]
    fn labeled_systems_get_the_classical_diagnostic() {
        let src = ELECTRON_PAIR
            .replace(r#"{ "qset": "qset { m: { electron: 2 } }" }"#, r#"{ "labeled": ["e1", "e2"] }"#)
            .replace(r#"{ "electron": "spin" }"#, r#"{ "e1": "spin", "e2": "spin" }"#);
        let r = validate_qm_structure(&QmStructure::from_json(&src).unwrap());
        assert!(!r.passed());
        assert!(r.diagnostics[0].starts_with(CLASSICAL_SYSTEMS));
    }

    #[test]
    fn unmapped_systems_fail() {
        let src = ELECTRON_PAIR.replace(r#""system_space": { "electron": "spin" },"#, "");
        let q = QmStructure::from_json(&src).unwrap();
        assert!(!validate_qm_structure(&q).passed());
        assert_eq!(
            q.probability("electron", "Sz", "up", &BorelSet::real_line()),
            Err(QuantumError::UnmappedSystem("electron".into()))
        );
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(QmStructure::from_json("{"), Err(QuantumError::Format(_))));
        let ragged = ELECTRON_PAIR.replace("[[0, 1], [1, 0]]", "[[0, 1], [1]]");
        assert!(matches!(QmStructure::from_json(&ragged), Err(QuantumError::Format(_))));
        let unknown = ELECTRON_PAIR.replace(r#""space": "spin", "vector": [1, 0]"#, r#""space": "orbit", "vector": [1, 0]"#);
        assert!(matches!(QmStructure::from_json(&unknown), Err(QuantumError::Unknown { .. })));
    }
}
