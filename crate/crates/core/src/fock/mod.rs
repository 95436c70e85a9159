//! Truncated Fock spaces over occupation-number states, and state counting
//! for labeled and unlabeled particles.
//!
//! A basis state records how many quanta sit in each mode and nothing about
//! which quantum is which.

mod algebra;
mod counting;
mod surd;
mod symmetry;

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use algebra::{check_algebra, AlgebraReport, IdentityCheck};
pub use counting::{
    classical_quotient_oracle, count_states, statistics_table, Counting, StateCount, TableRow, ORACLE_MAX,
};
pub use surd::{ExactMatrix, Surd};
pub use symmetry::{
    indistinguishability_check, permute_factors, permute_factors_exact, symmetrize, symmetrize_exact,
    symmetry_of, IndistinguishabilityReport, Symmetrized, Symmetry, INDISTINGUISHABILITY_TOL,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("a Fock space needs at least one mode")]
    NoModes,
    #[error("fermionic space with {modes} modes cannot hold {max_total} quanta")]
    FermionicOverfill { modes: usize, max_total: usize },
    #[error("{n} fermions do not fit in {k} modes")]
    Exclusion { n: usize, k: usize },
    #[error("mode {mode} out of range for {modes} modes")]
    ModeOutOfRange { mode: usize, modes: usize },
    #[error("state {0} is not in the basis")]
    NotInBasis(Occupancy),
    #[error("oracle limited to n, k <= {max}; got n = {n}, k = {k}")]
    Guard { n: usize, k: usize, max: usize },
    #[error("{0}")]
    Shape(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Bosonic,
    Fermionic,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Bosonic => "bosonic",
            Statistics::Fermionic => "fermionic",
        })
    }
}

/// Occupation numbers per mode.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occupancy(pub Vec<usize>);

impl Occupancy {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Occupancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        if self.0.iter().all(|&n| n < 10) {
            write!(f, "|{}>", parts.concat())
        } else {
            write!(f, "|{}>", parts.join(","))
        }
    }
}

impl Serialize for Occupancy {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Occupancy vectors over `modes` modes summing to `total`, at most `cap`
/// per mode, first mode descending.
pub(crate) fn occupancies(modes: usize, total: usize, cap: usize) -> Vec<Vec<usize>> {
    if modes == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total.min(cap)).rev() {
        for mut rest in occupancies(modes - 1, total - first, cap) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct FockSpace {
    modes: usize,
    statistics: Statistics,
    max_total: usize,
    basis: Vec<Occupancy>,
    index: HashMap<Occupancy, usize>,
}

/// All occupancy vectors with total at most `max_total`, by total and then
/// with earlier modes more occupied first: for two bosonic modes and two
/// quanta, `00, 10, 01, 20, 11, 02`.
pub fn build_fock_space(modes: usize, max_total: usize, statistics: Statistics) -> Result<FockSpace, FockError> {
    if modes == 0 {
        return Err(FockError::NoModes);
    }
    let cap = match statistics {
        Statistics::Bosonic => max_total,
        Statistics::Fermionic => {
            if max_total > modes {
                return Err(FockError::FermionicOverfill { modes, max_total });
            }
            1
        }
    };
    let basis: Vec<Occupancy> = (0..=max_total)
        .flat_map(|n| occupancies(modes, n, cap))
        .map(Occupancy)
        .collect();
    let index = basis.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
    Ok(FockSpace {
        modes,
        statistics,
        max_total,
        basis,
        index,
    })
}

impl FockSpace {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Occupancy] {
        &self.basis
    }

    pub fn index_of(&self, state: &Occupancy) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// States from which some creation operator would leave the space.
    pub fn is_boundary(&self, state: &Occupancy) -> bool {
        state.total() == self.max_total
            && match self.statistics {
                Statistics::Bosonic => true,
                Statistics::Fermionic => state.0.contains(&0),
            }
    }

    fn check_mode(&self, mode: usize) -> Result<(), FockError> {
        if mode >= self.modes {
            return Err(FockError::ModeOutOfRange {
                mode,
                modes: self.modes,
            });
        }
        Ok(())
    }

    fn check_state(&self, state: &Occupancy) -> Result<(), FockError> {
        if self.index_of(state).is_none() {
            return Err(FockError::NotInBasis(state.clone()));
        }
        Ok(())
    }

    /// `(-1)^(quanta in modes before `mode`)`.
    fn fermion_sign(state: &Occupancy, mode: usize) -> i64 {
        if state.0[..mode].iter().sum::<usize>() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Result of one ladder operator on one basis state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderResult {
    /// `None` is the zero vector.
    pub output: Option<(Surd, Occupancy)>,
    /// The exact result leaves the truncated space and was cut to zero.
    pub truncated: bool,
}

/// `a†_m |state>`: bosons gain `√(n_m + 1)`; fermions pick up
/// `(-1)^(Σ_{j<m} n_j)` and vanish on an occupied mode.
pub fn apply_creation(f: &FockSpace, mode: usize, state: &Occupancy) -> Result<LadderResult, FockError> {
    f.check_mode(mode)?;
    f.check_state(state)?;
    let n = state.0[mode];
    let coeff = match f.statistics {
        Statistics::Bosonic => Surd::sqrt(n as u64 + 1),
        Statistics::Fermionic if n == 1 => {
            return Ok(LadderResult {
                output: None,
                truncated: false,
            })
        }
        Statistics::Fermionic => Surd::int(FockSpace::fermion_sign(state, mode)),
    };
    if state.total() == f.max_total {
        return Ok(LadderResult {
            output: None,
            truncated: true,
        });
    }
    let mut next = state.clone();
    next.0[mode] += 1;
    Ok(LadderResult {
        output: Some((coeff, next)),
        truncated: false,
    })
}

/// `a_m |state>`: bosons gain `√n_m`; fermions pick up the same sign as
/// creation. Empty modes give zero.
pub fn apply_annihilation(f: &FockSpace, mode: usize, state: &Occupancy) -> Result<LadderResult, FockError> {
    f.check_mode(mode)?;
    f.check_state(state)?;
    let n = state.0[mode];
    if n == 0 {
        return Ok(LadderResult {
            output: None,
            truncated: false,
        });
    }
    let coeff = match f.statistics {
        Statistics::Bosonic => Surd::sqrt(n as u64),
        Statistics::Fermionic => Surd::int(FockSpace::fermion_sign(state, mode)),
    };
    let mut next = state.clone();
    next.0[mode] -= 1;
    Ok(LadderResult {
        output: Some((coeff, next)),
        truncated: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LadderKind {
    Creation,
    Annihilation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderOperator {
    pub mode: usize,
    pub kind: LadderKind,
    pub matrix: ExactMatrix,
}

pub fn ladder_operator(f: &FockSpace, mode: usize, kind: LadderKind) -> Result<LadderOperator, FockError> {
    f.check_mode(mode)?;
    let mut m = ExactMatrix::zeros(f.dim());
    for (j, state) in f.basis.iter().enumerate() {
        let r = match kind {
            LadderKind::Creation => apply_creation(f, mode, state)?,
            LadderKind::Annihilation => apply_annihilation(f, mode, state)?,
        };
        if let Some((c, out)) = r.output {
            m.set(f.index_of(&out).expect("ladder stays in basis"), j, c);
        }
    }
    Ok(LadderOperator { mode, kind, matrix: m })
}

/// `N = Σ a†_m a_m`.
pub fn number_operator(f: &FockSpace) -> ExactMatrix {
    (0..f.modes).fold(ExactMatrix::zeros(f.dim()), |acc, m| {
        let a = ladder_operator(f, m, LadderKind::Annihilation).unwrap().matrix;
        let c = ladder_operator(f, m, LadderKind::Creation).unwrap().matrix;
        acc.add(&c.mul(&a))
    })
}
