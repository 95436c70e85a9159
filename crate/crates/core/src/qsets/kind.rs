//! Kinds of m-objects and the universe that declares them.
//!
//! A kind is nomological: its attributes are fixed by law, not read off an
//! instance. Two kinds with the same name must therefore carry the same
//! attribute profile, and the comparison has to be decidable, so every
//! attribute value is an exact rational.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::QSetError;

/// Exact attribute value with a unit tag, e.g. `9.109e-31 kg` or `1/2 hbar`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quantity {
    pub value: BigRational,
    pub unit: String,
}

impl Quantity {
    pub fn new(value: BigRational, unit: impl Into<String>) -> Self {
        Quantity {
            value,
            unit: unit.into(),
        }
    }

    /// Parses `value unit` where value is an integer, a fraction `p/q`, or a
    /// decimal in plain or scientific notation.
    pub fn parse(text: &str) -> Result<Self, QSetError> {
        let text = text.trim();
        let (num, unit) = match text.find(char::is_whitespace) {
            Some(idx) => (&text[..idx], text[idx..].trim()),
            None => (text, ""),
        };
        Ok(Quantity::new(parse_exact(num)?, unit))
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_exact(&self.value))?;
        if !self.unit.is_empty() {
            write!(f, " {}", self.unit)?;
        }
        Ok(())
    }
}

/// Parses `-12`, `3/4`, `0.5`, `-4.80320451e-10` exactly.
pub fn parse_exact(text: &str) -> Result<BigRational, QSetError> {
    let bad = || QSetError::BadNumber(text.to_string());
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let value = if let Some((p, q)) = body.split_once('/') {
        let p = BigInt::from_str(p).map_err(|_| bad())?;
        let q = BigInt::from_str(q).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        BigRational::new(p, q)
    } else {
        let (mantissa, exp) = match body.find(['e', 'E']) {
            Some(idx) => (
                &body[..idx],
                body[idx + 1..].parse::<i32>().map_err(|_| bad())?,
            ),
            None => (body, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
        let scale = exp - frac_part.len() as i32;
        let ten = BigInt::from(10u32);
        if scale >= 0 {
            BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
        }
    };
    Ok(if neg { -value } else { value })
}

/// Canonical text for an exact value: integers plainly, terminating decimals
/// in scientific notation, everything else as `p/q`.
pub fn format_exact(value: &BigRational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let mut denom = value.denom().clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let (mut twos, mut fives) = (0usize, 0usize);
    while denom.is_multiple_of(&two) {
        denom /= &two;
        twos += 1;
    }
    while denom.is_multiple_of(&five) {
        denom /= &five;
        fives += 1;
    }
    if !denom.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    // value = m * 10^-e with m an integer
    let e = twos.max(fives);
    let scaled = value * BigRational::from_integer(num_traits::pow(BigInt::from(10u32), e));
    let m = scaled.to_integer();
    let sign = if m.is_negative() { "-" } else { "" };
    let digits = m.abs().to_string();
    let exponent = digits.len() as i64 - 1 - e as i64;
    let (lead, rest) = digits.split_at(1);
    let rest = rest.trim_end_matches('0');
    if rest.is_empty() {
        format!("{sign}{lead}e{exponent}")
    } else {
        format!("{sign}{lead}.{rest}e{exponent}")
    }
}

/// A kind of m-object (electron, positron, ...).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Kind {
    name: String,
    attributes: BTreeMap<String, Quantity>,
}

impl Kind {
    pub fn new(name: impl Into<String>) -> Self {
        Kind {
            name: name.into(),
            attributes: BTreeMap::new(),
        }
    }

    pub fn with_attribute(mut self, attr: impl Into<String>, value: Quantity) -> Self {
        self.attributes.insert(attr.into(), value);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn attributes(&self) -> &BTreeMap<String, Quantity> {
        &self.attributes
    }

    /// Electron profile: mass, charge in esu, spin in units of hbar.
    pub fn electron() -> Self {
        Kind::new("electron")
            .with_attribute("charge", Quantity::parse("-4.80320451e-10 esu").unwrap())
            .with_attribute("mass", Quantity::parse("9.109e-31 kg").unwrap())
            .with_attribute("spin", Quantity::parse("1/2 hbar").unwrap())
    }

    /// Positron profile: the electron's with the charge reversed.
    pub fn positron() -> Self {
        Kind::new("positron")
            .with_attribute("charge", Quantity::parse("4.80320451e-10 esu").unwrap())
            .with_attribute("mass", Quantity::parse("9.109e-31 kg").unwrap())
            .with_attribute("spin", Quantity::parse("1/2 hbar").unwrap())
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kind {} {{", self.name)?;
        for (i, (k, v)) in self.attributes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {k}: {v}")?;
        }
        if self.attributes.is_empty() {
            write!(f, "}}")
        } else {
            write!(f, " }}")
        }
    }
}

/// Declared kinds, keyed by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Universe {
    kinds: BTreeMap<String, Kind>,
}

impl Universe {
    pub fn new() -> Self {
        Self::default()
    }

    /// Electrons and positrons.
    pub fn leptons() -> Self {
        let mut u = Universe::new();
        u.declare(Kind::electron()).unwrap();
        u.declare(Kind::positron()).unwrap();
        u
    }

    /// Declares a kind; redeclaring an identical kind is a no-op.
    pub fn declare(&mut self, kind: Kind) -> Result<(), QSetError> {
        match self.kinds.get(kind.name()) {
            Some(existing) if *existing != kind => {
                Err(QSetError::KindConflict(kind.name().to_string()))
            }
            Some(_) => Ok(()),
            None => {
                self.kinds.insert(kind.name.clone(), kind);
                Ok(())
            }
        }
    }

    pub fn kind(&self, name: &str) -> Result<&Kind, QSetError> {
        self.kinds
            .get(name)
            .ok_or_else(|| QSetError::UnknownKind(name.to_string()))
    }

    pub fn kinds(&self) -> impl Iterator<Item = &Kind> {
        self.kinds.values()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "universe {{")?;
        for k in self.kinds.values() {
            writeln!(f, "  {k}")?;
        }
        write!(f, "}}")
    }
}
