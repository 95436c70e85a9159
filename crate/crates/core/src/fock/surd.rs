//! Exact sums `Σ c_r √r` with integer `c_r` and squarefree `r`, and sparse
//! square matrices over them. Ladder-operator entries are `±√n`, and products
//! and sums of those stay in this ring, so the (anti)commutation relations can
//! be checked with no rounding at all.

use std::collections::BTreeMap;
use std::fmt;

/// `n = s² t` with `t` squarefree.
fn split_square(mut n: u64) -> (u64, u64) {
    let (mut s, mut t) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            t *= p;
        }
        p += 1;
    }
    (s, t * n)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Surd(BTreeMap<u64, i64>);

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn int(c: i64) -> Self {
        Surd::term(c, 1)
    }

    /// `c √r` for any `r`.
    pub fn term(c: i64, r: u64) -> Self {
        if c == 0 || r == 0 {
            return Surd::zero();
        }
        let (s, t) = split_square(r);
        Surd(BTreeMap::from([(t, c * s as i64)]))
    }

    pub fn sqrt(r: u64) -> Self {
        Surd::term(1, r)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Surd) -> Surd {
        let mut out = self.0.clone();
        for (&r, &c) in &other.0 {
            let e = out.entry(r).or_insert(0);
            *e += c;
            if *e == 0 {
                out.remove(&r);
            }
        }
        Surd(out)
    }

    pub fn neg(&self) -> Surd {
        Surd(self.0.iter().map(|(&r, &c)| (r, -c)).collect())
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (&r1, &c1) in &self.0 {
            for (&r2, &c2) in &other.0 {
                out = out.add(&Surd::term(c1 * c2, r1 * r2));
            }
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.0.iter().map(|(&r, &c)| c as f64 * (r as f64).sqrt()).sum()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&r, &c)) in self.0.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if k > 0 {
                f.write_str(" ")?;
            }
            match (c.unsigned_abs(), r) {
                (a, 1) => write!(f, "{a}")?,
                (1, r) => write!(f, "√{r}")?,
                (a, r) => write!(f, "{a}√{r}")?,
            }
        }
        Ok(())
    }
}

/// Sparse `dim × dim` matrix with [`Surd`] entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), Surd>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = ExactMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Surd::int(1));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Surd {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Surd) {
        assert!(i < self.dim && j < self.dim);
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Surd)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    /// Entries are real, so the adjoint is the transpose.
    pub fn adjoint(&self) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            let s = out.get(i, j).add(v);
            out.set(i, j, s);
        }
        out
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.dim);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, v.mul(&Surd::int(c)));
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, other.dim);
        let mut rows: Vec<Vec<(usize, &Surd)>> = vec![Vec::new(); self.dim];
        for (&(k, j), v) in &other.entries {
            rows[k].push((j, v));
        }
        let mut out = ExactMatrix::zeros(self.dim);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &rows[k] {
                let s = out.get(i, j).add(&a.mul(b));
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<(usize, Surd)> {
        self.entries
            .iter()
            .filter(|((_, c), _)| *c == j)
            .map(|(&(i, _), v)| (i, v.clone()))
            .collect()
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).to_f64())
    }
}
