//! Counting `n`-particle states over `k` modes three ways: labeled particles,
//! bosonic occupancies and fermionic occupancies.
//!
//! The unlabeled counts come straight from occupancy vectors. The classical
//! oracle instead starts from labeled assignments and quotients by particle
//! permutations, which is the route the occupancy count makes unnecessary.

use itertools::Itertools;
use num_integer::binomial;
use serde::Serialize;

use super::{occupancies, FockError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Counting {
    /// Labeled particles: `k^n`.
    #[serde(rename = "MB")]
    MaxwellBoltzmann,
    /// Any occupancy: `C(n + k - 1, n)`.
    #[serde(rename = "BE")]
    BoseEinstein,
    /// Occupancy at most one: `C(k, n)`.
    #[serde(rename = "FD")]
    FermiDirac,
}

impl Counting {
    pub const ALL: [Counting; 3] = [Counting::MaxwellBoltzmann, Counting::BoseEinstein, Counting::FermiDirac];

    pub fn abbrev(self) -> &'static str {
        match self {
            Counting::MaxwellBoltzmann => "MB",
            Counting::BoseEinstein => "BE",
            Counting::FermiDirac => "FD",
        }
    }

    pub fn parse(s: &str) -> Option<Counting> {
        match s.to_ascii_lowercase().as_str() {
            "mb" | "maxwell-boltzmann" => Some(Counting::MaxwellBoltzmann),
            "be" | "bose-einstein" => Some(Counting::BoseEinstein),
            "fd" | "fermi-dirac" => Some(Counting::FermiDirac),
            _ => None,
        }
    }
}

/// Enumeration is skipped above this many candidates.
const ENUMERATION_LIMIT: u128 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StateCount {
    pub closed_form: u128,
    /// Direct count of assignments (MB) or occupancy vectors (BE, FD);
    /// `None` when too large to enumerate.
    pub enumerated: Option<u128>,
}

impl StateCount {
    pub fn agrees(&self) -> bool {
        self.enumerated.is_none_or(|e| e == self.closed_form)
    }
}

fn closed_form(n: usize, k: usize, stat: Counting) -> u128 {
    let (n, k) = (n as u128, k as u128);
    match stat {
        Counting::MaxwellBoltzmann => k.pow(n as u32),
        Counting::BoseEinstein if k == 0 => u128::from(n == 0),
        Counting::BoseEinstein => binomial(n + k - 1, n),
        Counting::FermiDirac => binomial(k, n),
    }
}

pub fn count_states(n: usize, k: usize, stat: Counting) -> Result<StateCount, FockError> {
    if stat == Counting::FermiDirac && n > k {
        return Err(FockError::Exclusion { n, k });
    }
    let closed_form = closed_form(n, k, stat);
    let enumerated = (closed_form <= ENUMERATION_LIMIT).then(|| match stat {
        Counting::MaxwellBoltzmann => std::iter::repeat_n(0..k, n).multi_cartesian_product().count() as u128,
        Counting::BoseEinstein => occupancies(k, n, n).len() as u128,
        Counting::FermiDirac => occupancies(k, n, 1).len() as u128,
    });
    Ok(StateCount {
        closed_form,
        enumerated,
    })
}

pub const ORACLE_MAX: usize = 6;

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Orbits of `S_n` on the `k^n` labeled assignments of particles to modes,
/// merged along adjacent transpositions, which generate `S_n`. For FD the
/// orbits of assignments putting two particles in one mode are dropped. MB
/// quotients nothing and returns `k^n`.
pub fn classical_quotient_oracle(n: usize, k: usize, stat: Counting) -> Result<u128, FockError> {
    if n > ORACLE_MAX || k > ORACLE_MAX {
        return Err(FockError::Guard { n, k, max: ORACLE_MAX });
    }
    if stat == Counting::FermiDirac && n > k {
        return Err(FockError::Exclusion { n, k });
    }
    let total = k.pow(n as u32);
    if stat == Counting::MaxwellBoltzmann {
        return Ok(total as u128);
    }
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; n];
        for slot in d.iter_mut().rev() {
            *slot = x % k;
            x /= k;
        }
        d
    };
    let encode = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * k + x);
    let mut parent: Vec<usize> = (0..total).collect();
    for x in 0..total {
        let d = digits(x);
        for i in 0..n.saturating_sub(1) {
            let mut s = d.clone();
            s.swap(i, i + 1);
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, encode(&s)));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let orbits = (0..total).filter(|&x| find(&mut parent, x) == x);
    Ok(match stat {
        Counting::FermiDirac => orbits.filter(|&x| digits(x).iter().all_unique()).count(),
        _ => orbits.count(),
    } as u128)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "MB")]
    pub mb: u128,
    #[serde(rename = "BE")]
    pub be: u128,
    #[serde(rename = "FD")]
    pub fd: Option<u128>,
    /// Closed forms, enumeration and (within its guard) the quotient oracle
    /// all agree.
    pub consistent: bool,
}

pub fn statistics_table(max_n: usize, max_k: usize) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        for k in 1..=max_k {
            let mut consistent = true;
            let mut value = |stat: Counting| -> Option<u128> {
                let c = count_states(n, k, stat).ok()?;
                consistent &= c.agrees();
                if let Ok(o) = classical_quotient_oracle(n, k, stat) {
                    consistent &= o == c.closed_form;
                }
                Some(c.closed_form)
            };
            let mb = value(Counting::MaxwellBoltzmann).expect("MB always defined");
            let be = value(Counting::BoseEinstein).expect("BE always defined");
            let fd = value(Counting::FermiDirac);
            rows.push(TableRow {
                n,
                k,
                mb,
                be,
                fd,
                consistent,
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Permutation;

    /// Orbit count of `S_n` on maps `n -> k` by Burnside: the average over
    /// permutations of `k^(cycles)`.
    fn burnside_be(n: usize, k: usize) -> u128 {
        let perms: Vec<Permutation> = (0..n)
            .permutations(n)
            .map(|p| Permutation::from_images(p).unwrap())
            .collect();
        let fixed: u128 = perms.iter().map(|p| (k as u128).pow(p.cycles().len() as u32)).sum();
        fixed / perms.len() as u128
    }

    #[test]
    fn small_examples() {
        let c = |stat| count_states(2, 2, stat).unwrap().closed_form;
        assert_eq!(
            (c(Counting::MaxwellBoltzmann), c(Counting::BoseEinstein), c(Counting::FermiDirac)),
            (4, 3, 1)
        );
        for k in 0..5 {
            for stat in Counting::ALL {
                let vacuum = count_states(0, k, stat).unwrap();
                assert_eq!(vacuum.closed_form, 1);
                assert!(vacuum.agrees());
                if k > 0 {
                    assert_eq!(count_states(1, k, stat).unwrap().closed_form, k as u128);
                }
            }
        }
        assert_eq!(count_states(3, 2, Counting::FermiDirac), Err(FockError::Exclusion { n: 3, k: 2 }));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(classical_quotient_oracle(2, 2, Counting::BoseEinstein).unwrap(), 3);
        assert_eq!(classical_quotient_oracle(2, 2, Counting::FermiDirac).unwrap(), 1);
        assert_eq!(classical_quotient_oracle(3, 2, Counting::BoseEinstein).unwrap(), 4);
        assert!(matches!(
            classical_quotient_oracle(7, 2, Counting::BoseEinstein),
            Err(FockError::Guard { .. })
        ));
    }

    #[test]
    fn counts_agree_with_oracle_and_burnside() {
        for n in 0..=ORACLE_MAX {
            for k in 1..=ORACLE_MAX {
                for stat in Counting::ALL {
                    if stat == Counting::FermiDirac && n > k {
                        continue;
                    }
                    let c = count_states(n, k, stat).unwrap();
                    assert!(c.agrees(), "{n} {k} {stat:?}");
                    assert_eq!(classical_quotient_oracle(n, k, stat).unwrap(), c.closed_form);
                }
                if n > 0 {
                    assert_eq!(burnside_be(n, k), count_states(n, k, Counting::BoseEinstein).unwrap().closed_form);
                }
            }
        }
    }

    #[test]
    fn table_is_consistent() {
        let t = statistics_table(4, 3);
        assert_eq!(t.len(), 15);
        assert!(t.iter().all(|r| r.consistent));
        let row = t.iter().find(|r| r.n == 4 && r.k == 3).unwrap();
        assert_eq!((row.mb, row.be, row.fd), (81, 15, None));
    }
}
