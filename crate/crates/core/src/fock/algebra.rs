use serde::Serialize;

use super::{ladder_operator, ExactMatrix, FockSpace, LadderKind, Occupancy, Statistics};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    /// For example `[a0, a1+] = 0` or `{a1, a1+} = I`.
    pub name: String,
    pub holds: bool,
    pub columns_checked: usize,
    pub failing_columns: Vec<Occupancy>,
    /// Boundary states on which the identity fails; not counted against it.
    pub boundary_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub statistics: Statistics,
    pub modes: usize,
    pub max_total: usize,
    pub dim: usize,
    /// States where a creation operator is cut off by the truncation. Identities
    /// mixing creation and annihilation are not checked on them.
    pub boundary_states: Vec<Occupancy>,
    pub identities: Vec<IdentityCheck>,
}

impl AlgebraReport {
    pub fn holds(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }
}

/// Checks the canonical commutation relations for bosons or the canonical
/// anticommutation relations for fermions, exactly.
pub fn check_algebra(f: &FockSpace) -> AlgebraReport {
    let k = f.modes();
    let a: Vec<ExactMatrix> = (0..k)
        .map(|m| ladder_operator(f, m, LadderKind::Annihilation).unwrap().matrix)
        .collect();
    let c: Vec<ExactMatrix> = (0..k)
        .map(|m| ladder_operator(f, m, LadderKind::Creation).unwrap().matrix)
        .collect();
    let (open, close, sign) = match f.statistics() {
        Statistics::Bosonic => ("[", "]", -1),
        Statistics::Fermionic => ("{", "}", 1),
    };
    let bracket = |x: &ExactMatrix, y: &ExactMatrix| x.mul(y).add(&y.mul(x).scale(sign));
    let zero = ExactMatrix::zeros(f.dim());
    let id = ExactMatrix::identity(f.dim());
    let boundary: Vec<bool> = f.basis().iter().map(|s| f.is_boundary(s)).collect();

    let check = |name: String, got: ExactMatrix, want: &ExactMatrix, skip_boundary: bool| {
        let mut failing = Vec::new();
        let mut boundary_failures = 0;
        let mut checked = 0;
        for (j, state) in f.basis().iter().enumerate() {
            let ok = got.column(j) == want.column(j);
            if skip_boundary && boundary[j] {
                boundary_failures += usize::from(!ok);
                continue;
            }
            checked += 1;
            if !ok {
                failing.push(state.clone());
            }
        }
        IdentityCheck {
            name,
            holds: failing.is_empty(),
            columns_checked: checked,
            failing_columns: failing,
            boundary_failures,
        }
    };

    let mut identities = Vec::new();
    for m in 0..k {
        for n in 0..k {
            let want = if m == n { &id } else { &zero };
            let rhs = if m == n { "I" } else { "0" };
            identities.push(check(
                format!("{open}a{m}, a{n}+{close} = {rhs}"),
                bracket(&a[m], &c[n]),
                want,
                true,
            ));
        }
    }
    for m in 0..k {
        for n in m..k {
            if f.statistics() == Statistics::Bosonic && m == n {
                continue;
            }
            identities.push(check(format!("{open}a{m}, a{n}{close} = 0"), bracket(&a[m], &a[n]), &zero, false));
            identities.push(check(format!("{open}a{m}+, a{n}+{close} = 0"), bracket(&c[m], &c[n]), &zero, false));
        }
    }

    AlgebraReport {
        statistics: f.statistics(),
        modes: k,
        max_total: f.max_total(),
        dim: f.dim(),
        boundary_states: f.basis().iter().filter(|s| f.is_boundary(s)).cloned().collect(),
        identities,
    }
}
