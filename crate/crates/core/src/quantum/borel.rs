//! Finite unions of real intervals, and finite Boolean algebras of them.
//!
//! Text syntax: `[a, b]`, `(a, b)`, `[a, b)`, `(a, b]`, point sets `{x, y}`,
//! `R` for the whole line and `{}` for the empty set, joined by `U`.
//! Endpoints may be `inf` or `-inf`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::QuantumError;

/// Values within this distance of an endpoint count as equal to it.
pub const ENDPOINT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, lo_closed: bool, hi: f64, hi_closed: bool) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: lo_closed && lo.is_finite(),
            hi_closed: hi_closed && hi.is_finite(),
        }
    }

    pub fn point(x: f64) -> Self {
        Interval::new(x, true, x, true)
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed {
            x >= self.lo - ENDPOINT_TOL
        } else {
            x > self.lo + ENDPOINT_TOL
        };
        let below = if self.hi_closed {
            x <= self.hi + ENDPOINT_TOL
        } else {
            x < self.hi - ENDPOINT_TOL
        };
        above && below
    }
}

fn fmt_end(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    if x == f64::INFINITY {
        f.write_str("inf")
    } else if x == f64::NEG_INFINITY {
        f.write_str("-inf")
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            f.write_str("{")?;
            fmt_end(f, self.lo)?;
            return f.write_str("}");
        }
        f.write_str(if self.lo_closed { "[" } else { "(" })?;
        fmt_end(f, self.lo)?;
        f.write_str(", ")?;
        fmt_end(f, self.hi)?;
        f.write_str(if self.hi_closed { "]" } else { ")" })
    }
}

/// Disjoint intervals sorted by left endpoint, adjacent ones merged.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BorelSet {
    intervals: Vec<Interval>,
}

impl BorelSet {
    pub fn empty() -> Self {
        BorelSet::default()
    }

    pub fn real_line() -> Self {
        BorelSet::from_intervals([Interval::new(f64::NEG_INFINITY, false, f64::INFINITY, false)])
    }

    pub fn point(x: f64) -> Self {
        BorelSet::from_intervals([Interval::point(x)])
    }

    pub fn from_intervals(parts: impl IntoIterator<Item = Interval>) -> Self {
        let mut v: Vec<Interval> = parts.into_iter().filter(|i| !i.is_empty()).collect();
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval> = Vec::new();
        for i in v {
            if let Some(last) = out.last_mut() {
                let touches = i.lo < last.hi || (i.lo == last.hi && (i.lo_closed || last.hi_closed));
                if touches {
                    if i.hi > last.hi {
                        last.hi = i.hi;
                        last.hi_closed = i.hi_closed;
                    } else if i.hi == last.hi {
                        last.hi_closed |= i.hi_closed;
                    }
                    continue;
                }
            }
            out.push(i);
        }
        BorelSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn union(&self, other: &BorelSet) -> BorelSet {
        BorelSet::from_intervals(self.intervals.iter().chain(&other.intervals).copied())
    }

    fn finite_endpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.intervals
            .iter()
            .flat_map(|i| [i.lo, i.hi])
            .filter(|x| x.is_finite())
    }

    pub fn parse(text: &str) -> Result<BorelSet, QuantumError> {
        let bad = |reason: &str| QuantumError::BadBorel {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let num = |s: &str| -> Result<f64, QuantumError> {
            let x: f64 = s.trim().parse().map_err(|_| bad(&format!("bad number `{}`", s.trim())))?;
            if x.is_nan() {
                return Err(bad("NaN endpoint"));
            }
            Ok(x)
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        let mut parts = Vec::new();
        if rest.is_empty() {
            return Err(bad("empty text"));
        }
        loop {
            if let Some(r) = rest.strip_prefix('R') {
                parts.push(Interval::new(f64::NEG_INFINITY, false, f64::INFINITY, false));
                rest = r;
            } else if let Some(r) = rest.strip_prefix('{') {
                let end = r.find('}').ok_or_else(|| bad("unclosed `{`"))?;
                let body = &r[..end];
                if !body.is_empty() {
                    for p in body.split(',') {
                        let x = num(p)?;
                        if !x.is_finite() {
                            return Err(bad("points must be finite"));
                        }
                        parts.push(Interval::point(x));
                    }
                }
                rest = &r[end + 1..];
            } else if rest.starts_with(['[', '(']) {
                let lo_closed = rest.starts_with('[');
                let end = rest.find([']', ')']).ok_or_else(|| bad("unclosed interval"))?;
                let hi_closed = rest[end..].starts_with(']');
                let (a, b) = rest[1..end].split_once(',').ok_or_else(|| bad("interval needs two endpoints"))?;
                let (lo, hi) = (num(a)?, num(b)?);
                if lo > hi {
                    return Err(bad("left endpoint exceeds right endpoint"));
                }
                parts.push(Interval::new(lo, lo_closed, hi, hi_closed));
                rest = &rest[end + 1..];
            } else {
                return Err(bad("expected `[`, `(`, `{` or `R`"));
            }
            if rest.is_empty() {
                break;
            }
            rest = rest.strip_prefix('U').ok_or_else(|| bad("expected `U` between parts"))?;
        }
        Ok(BorelSet::from_intervals(parts))
    }
}

impl fmt::Display for BorelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        if *self == BorelSet::real_line() {
            return f.write_str("R");
        }
        for (k, i) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" U ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl Serialize for BorelSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The Boolean algebra generated by finitely many Borel sets.
///
/// Its atoms are the points where some generator has an endpoint and the open
/// gaps between them; a set belongs to the algebra exactly when each of its
/// finite endpoints is one of those points.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BorelAlgebra {
    breakpoints: Vec<f64>,
}

impl BorelAlgebra {
    /// `{∅, R}`.
    pub fn trivial() -> Self {
        BorelAlgebra::default()
    }

    pub fn generated_by<'a>(sets: impl IntoIterator<Item = &'a BorelSet>) -> Self {
        let mut pts: Vec<f64> = sets.into_iter().flat_map(|s| s.finite_endpoints().collect::<Vec<_>>()).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() <= ENDPOINT_TOL);
        BorelAlgebra { breakpoints: pts }
    }

    /// Generated by the singletons of the given points, for instance a spectrum.
    pub fn from_points(points: &[f64]) -> Self {
        let sets: Vec<BorelSet> = points.iter().map(|&x| BorelSet::point(x)).collect();
        BorelAlgebra::generated_by(&sets)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn contains(&self, set: &BorelSet) -> bool {
        set.finite_endpoints()
            .all(|x| self.breakpoints.iter().any(|b| (b - x).abs() <= ENDPOINT_TOL))
    }

    /// The atoms, left to right. They partition the real line.
    pub fn atoms(&self) -> Vec<BorelSet> {
        let mut out = Vec::new();
        let mut left = f64::NEG_INFINITY;
        for &b in &self.breakpoints {
            out.push(BorelSet::from_intervals([Interval::new(left, false, b, false)]));
            out.push(BorelSet::point(b));
            left = b;
        }
        out.push(BorelSet::from_intervals([Interval::new(left, false, f64::INFINITY, false)]));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for (src, want) in [
            ("[0, 1]", "[0, 1]"),
            ("{1}", "{1}"),
            ("(-inf, 0) U {1}", "(-inf, 0) U {1}"),
            ("R", "R"),
            ("{}", "{}"),
            ("[0,1] U [1,2)", "[0, 2)"),
            ("(0,1) U (1,2)", "(0, 1) U (1, 2)"),
            ("{3, 1, 2}", "{1} U {2} U {3}"),
            ("[-inf, inf]", "R"),
            ("[2,3] U [0,1]", "[0, 1] U [2, 3]"),
        ] {
            assert_eq!(BorelSet::parse(src).unwrap().to_string(), want, "{src}");
        }
        for bad in ["", "[1,0]", "[0,1", "{x}", "[0,1] [2,3]", "(0)"] {
            assert!(BorelSet::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn endpoint_tolerance() {
        let closed = BorelSet::parse("[0, 1]").unwrap();
        assert!(closed.contains(1.0 + 1e-12));
        assert!(!closed.contains(1.0 + 1e-6));
        let open = BorelSet::parse("(0, 1)").unwrap();
        assert!(!open.contains(1.0 - 1e-12));
        assert!(open.contains(0.5));
        assert!(BorelSet::point(-1.0).contains(-1.0 + 1e-11));
    }

    #[test]
    fn algebra_membership_and_atoms() {
        let alg = BorelAlgebra::from_points(&[-1.0, 1.0]);
        assert!(alg.contains(&BorelSet::point(1.0)));
        assert!(alg.contains(&BorelSet::parse("(-1, 1]").unwrap()));
        assert!(alg.contains(&BorelSet::real_line()));
        assert!(!alg.contains(&BorelSet::parse("[0, 1]").unwrap()));
        let atoms = alg.atoms();
        assert_eq!(atoms.len(), 5);
        for x in [-3.0, -1.0, 0.0, 1.0, 5.0] {
            assert_eq!(atoms.iter().filter(|a| a.contains(x)).count(), 1, "{x}");
        }
        assert_eq!(BorelAlgebra::trivial().atoms(), vec![BorelSet::real_line()]);
    }
}
