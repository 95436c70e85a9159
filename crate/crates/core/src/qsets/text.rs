//! Canonical text form.
//!
//! ```text
//! universe {
//!   kind electron { charge: -4.80320451e-10 esu, mass: 9.109e-31 kg, spin: 1/2 hbar }
//! }
//! let pair = qset { m: { electron: 2 }, M: [ "Alice" ], nested: [ qset { m: { electron: 1 } } ] };
//! ```
//!
//! Kinds print in name order, labels in label order, nested members in
//! canonical order with one entry per copy. Empty sections are omitted, so
//! the empty quasi-set prints as `qset {}`.

use std::fmt;

use num_rational::BigRational;

use super::kind::parse_exact;
use super::{Kind, MObject, QSet, QSetError, Quantity, Universe};
use crate::lex::{Cursor, ParseError, Tok};

pub(super) fn write_qset(f: &mut fmt::Formatter<'_>, q: &QSet) -> fmt::Result {
    let mut sections = Vec::new();
    if !q.m_part.is_empty() {
        let body: Vec<String> = q
            .m_part
            .iter()
            .map(|(k, n)| format!("{}: {n}", k.name()))
            .collect();
        sections.push(format!("m: {{ {} }}", body.join(", ")));
    }
    if !q.objects.is_empty() {
        let body: Vec<String> = q
            .objects
            .iter()
            .map(|o| format!("{:?}", o.label()))
            .collect();
        sections.push(format!("M: [ {} ]", body.join(", ")));
    }
    if !q.nested.is_empty() {
        let mut body = Vec::new();
        for (inner, &n) in &q.nested {
            for _ in 0..n {
                body.push(inner.to_string());
            }
        }
        sections.push(format!("nested: [ {} ]", body.join(", ")));
    }
    if sections.is_empty() {
        write!(f, "qset {{}}")
    } else {
        write!(f, "qset {{ {} }}", sections.join(", "))
    }
}

/// A universe preamble followed by named quasi-sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QSetDocument {
    pub universe: Universe,
    pub sets: Vec<(String, QSet)>,
}

impl QSetDocument {
    pub fn get(&self, name: &str) -> Result<&QSet, QSetError> {
        self.sets
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, q)| q)
            .ok_or_else(|| QSetError::UnknownName(name.to_string()))
    }
}

impl fmt::Display for QSetDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.universe)?;
        for (name, q) in &self.sets {
            writeln!(f, "let {name} = {q};")?;
        }
        Ok(())
    }
}

pub fn parse_document(src: &str) -> Result<QSetDocument, QSetError> {
    let mut cur = Cursor::new(src)?;
    let mut doc = QSetDocument::default();
    while !cur.at_eof() {
        if cur.eat_keyword("universe") {
            cur.expect_punct("{")?;
            while !cur.eat_punct("}") {
                let span = cur.span();
                let kind = parse_kind(&mut cur)?;
                doc.universe
                    .declare(kind)
                    .map_err(|e| ParseError::at(span, e.to_string()))?;
            }
        } else if cur.eat_keyword("let") {
            let (name, span) = cur.expect_ident()?;
            if doc.sets.iter().any(|(n, _)| *n == name) {
                return Err(ParseError::at(span, format!("`{name}` defined twice")).into());
            }
            cur.expect_punct("=")?;
            let q = parse_qset_expr(&mut cur, &doc.universe)?;
            cur.expect_punct(";")?;
            doc.sets.push((name, q));
        } else {
            return Err(cur.unexpected("`universe` or `let`").into());
        }
    }
    Ok(doc)
}

/// Parses a single `qset { ... }` expression against a universe.
pub fn parse_qset(src: &str, universe: &Universe) -> Result<QSet, QSetError> {
    let mut cur = Cursor::new(src)?;
    let q = parse_qset_expr(&mut cur, universe)?;
    if !cur.at_eof() {
        return Err(cur.unexpected("end of input").into());
    }
    Ok(q)
}

fn parse_kind(cur: &mut Cursor) -> Result<Kind, ParseError> {
    cur.expect_keyword("kind")?;
    let (name, _) = cur.expect_ident()?;
    let mut kind = Kind::new(name);
    cur.expect_punct("{")?;
    if !cur.eat_punct("}") {
        loop {
            let (attr, span) = cur.expect_ident()?;
            if kind.attributes().contains_key(&attr) {
                return Err(ParseError::at(span, format!("attribute `{attr}` repeated")));
            }
            cur.expect_punct(":")?;
            let value = parse_value(cur)?;
            let unit = match cur.peek().clone() {
                Tok::Ident(u) => {
                    cur.next();
                    u
                }
                _ => String::new(),
            };
            kind = kind.with_attribute(attr, Quantity::new(value, unit));
            if cur.eat_punct("}") {
                break;
            }
            cur.expect_punct(",")?;
        }
    }
    Ok(kind)
}

fn parse_value(cur: &mut Cursor) -> Result<BigRational, ParseError> {
    let span = cur.span();
    let neg = cur.eat_punct("-");
    let mut text = String::from(if neg { "-" } else { "" });
    match cur.next().tok {
        Tok::Int(n) => {
            text.push_str(&n.to_string());
            if cur.eat_punct("/") {
                let (d, _) = cur.expect_int()?;
                text.push_str(&format!("/{d}"));
            }
        }
        Tok::Decimal(d) => text.push_str(&d),
        other => return Err(ParseError::at(span, format!("expected number, found {other}"))),
    }
    parse_exact(&text).map_err(|e| ParseError::at(span, e.to_string()))
}

fn parse_qset_expr(cur: &mut Cursor, universe: &Universe) -> Result<QSet, QSetError> {
    cur.expect_keyword("qset")?;
    cur.expect_punct("{")?;
    let mut q = QSet::empty();
    let mut seen: Vec<&'static str> = Vec::new();
    if !cur.eat_punct("}") {
        loop {
            let (section, span) = cur.expect_ident()?;
            let key: &'static str = match section.as_str() {
                "m" => "m",
                "M" => "M",
                "nested" => "nested",
                other => {
                    return Err(ParseError::at(
                        span,
                        format!("unknown section `{other}` (expected m, M or nested)"),
                    )
                    .into())
                }
            };
            if seen.contains(&key) {
                return Err(ParseError::at(span, format!("section `{key}` repeated")).into());
            }
            seen.push(key);
            cur.expect_punct(":")?;
            match key {
                "m" => {
                    cur.expect_punct("{")?;
                    if !cur.eat_punct("}") {
                        loop {
                            let (kname, kspan) = cur.expect_ident()?;
                            cur.expect_punct(":")?;
                            let (n, _) = cur.expect_int()?;
                            let kind = universe
                                .kind(&kname)
                                .map_err(|e| ParseError::at(kspan, e.to_string()))?;
                            if q.multiplicity(&kname) > 0 {
                                return Err(ParseError::at(
                                    kspan,
                                    format!("kind `{kname}` listed twice"),
                                )
                                .into());
                            }
                            q = q.with_m(kind.clone(), n as usize)?;
                            if cur.eat_punct("}") {
                                break;
                            }
                            cur.expect_punct(",")?;
                        }
                    }
                }
                "M" => {
                    cur.expect_punct("[")?;
                    if !cur.eat_punct("]") {
                        loop {
                            let (label, _) = cur.expect_str()?;
                            q = q.with_object(MObject::new(label));
                            if cur.eat_punct("]") {
                                break;
                            }
                            cur.expect_punct(",")?;
                        }
                    }
                }
                _ => {
                    cur.expect_punct("[")?;
                    if !cur.eat_punct("]") {
                        loop {
                            let inner = parse_qset_expr(cur, universe)?;
                            q = q.with_nested(inner, 1)?;
                            if cur.eat_punct("]") {
                                break;
                            }
                            cur.expect_punct(",")?;
                        }
                    }
                }
            }
            if cur.eat_punct("}") {
                break;
            }
            cur.expect_punct(",")?;
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsets::{random_qset, GenParams};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_print() {
        let u = Universe::leptons();
        let q = parse_qset(
            r#"qset { M: [ "Alice" ], m: { positron: 1, electron: 2 }, nested: [ qset { m: { electron: 1 } }, qset { m: { electron: 1 } } ] }"#,
            &u,
        )
        .unwrap();
        assert_eq!(
            q.to_string(),
            r#"qset { m: { electron: 2, positron: 1 }, M: [ "Alice" ], nested: [ qset { m: { electron: 1 } }, qset { m: { electron: 1 } } ] }"#
        );
        assert_eq!(QSet::empty().to_string(), "qset {}");
    }

    #[test]
    fn document_round_trip() {
        let src = r#"
            universe {
              kind electron { mass: 9.109e-31 kg, charge: -4.80320451e-10 esu, spin: 1/2 hbar }
              kind photon {}
            }
            let a = qset { m: { electron: 2 } };
            let b = qset { m: { photon: 3 }, M: [ "Lab" ] };
        "#;
        let doc = parse_document(src).unwrap();
        assert_eq!(doc.universe.kind("electron").unwrap(), &Kind::electron());
        let printed = doc.to_string();
        let again = parse_document(&printed).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn errors_carry_positions() {
        let u = Universe::leptons();
        let err = parse_qset("qset { m: { muon: 1 } }", &u).unwrap_err();
        match err {
            QSetError::Parse(p) => assert_eq!((p.line, p.col), (1, 13)),
            other => panic!("{other:?}"),
        }
        assert!(parse_qset("qset { m: { electron: 1 }, m: {} }", &u).is_err());
        assert!(parse_qset("qset { m: { electron: 1, electron: 2 } }", &u).is_err());
        assert!(parse_document("let a = qset {}; let a = qset {};").is_err());
    }

    proptest! {
        // serialize -> parse -> serialize is byte-stable, so the text form
        // cannot smuggle in any per-object identity
        #[test]
        fn serialization_is_canonical(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = random_qset(&mut rng, &GenParams::default());
            let mut u = Universe::new();
            for k in crate::qsets::gen::kind_pool() {
                u.declare(k).unwrap();
            }
            let text = q.to_string();
            let back = parse_qset(&text, &u).unwrap();
            prop_assert_eq!(&back, &q);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
