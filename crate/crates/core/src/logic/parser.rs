//! Parser for `.qlog` files and standalone formulas. The grammar is written
//! out in `GRAMMAR.md` at the crate root.

use std::collections::BTreeSet;

use super::formula::{Formula, Term};
use super::identity::expand_defined_identity;
use super::LogicError;
use crate::lex::{Cursor, ParseError, Span, Tok};
use crate::structures::{FiniteStructure, Signature};

const KEYWORDS: &[&str] = &["forall", "exists", "and", "or", "not", "true", "false"];

/// Contents of a `.qlog` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QlogDocument {
    pub signature: Signature,
    /// Present when the file declares a `domain`.
    pub structure: Option<FiniteStructure>,
    pub formulas: Vec<(String, Formula)>,
}

impl QlogDocument {
    pub fn structure(&self) -> Result<&FiniteStructure, LogicError> {
        self.structure.as_ref().ok_or(LogicError::NoStructure)
    }

    pub fn formula(&self, name: &str) -> Result<&Formula, LogicError> {
        self.formulas
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| LogicError::UnknownFormula(name.to_string()))
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, LogicError> {
    let mut cur = Cursor::new(src)?;
    let f = formula(&mut cur)?;
    if !cur.at_eof() {
        return Err(cur.unexpected("end of formula").into());
    }
    Ok(f)
}

pub fn parse_document(src: &str) -> Result<QlogDocument, LogicError> {
    let mut cur = Cursor::new(src)?;
    let mut signature: Option<Signature> = None;
    let mut structure: Option<FiniteStructure> = None;
    let mut formulas: Vec<(String, Formula)> = Vec::new();

    let at = |span: Span, e: &dyn std::fmt::Display| -> LogicError {
        ParseError::at(span, e.to_string()).into()
    };

    while !cur.at_eof() {
        let (kw, span) = cur.expect_ident()?;
        match kw.as_str() {
            "signature" => {
                if signature.is_some() || structure.is_some() {
                    return Err(at(span, &"signature must come first and only once"));
                }
                let mut sig = Signature::new();
                if !cur.is_punct(";") {
                    loop {
                        let (name, nspan) = cur.expect_ident()?;
                        cur.expect_punct("/")?;
                        let (arity, _) = cur.expect_int()?;
                        let res = if arity == 0 {
                            sig.clone().with_constant(&name).map(|s| sig = s)
                        } else {
                            sig.add_relation(&name, arity as usize)
                        };
                        res.map_err(|e| at(nspan, &e))?;
                        if !cur.eat_punct(",") {
                            break;
                        }
                    }
                }
                cur.expect_punct(";")?;
                signature = Some(sig);
            }
            "domain" => {
                if structure.is_some() {
                    return Err(at(span, &"domain declared twice"));
                }
                let (n, _) = cur.expect_int()?;
                cur.expect_punct(";")?;
                let sig = signature.get_or_insert_with(Signature::new).clone();
                structure = Some(FiniteStructure::new(sig, n as usize));
            }
            "labels" => {
                let s = structure.take().ok_or_else(|| at(span, &"`labels` before `domain`"))?;
                let mut labels = Vec::new();
                loop {
                    labels.push(cur.expect_str()?.0);
                    if !cur.eat_punct(",") {
                        break;
                    }
                }
                cur.expect_punct(";")?;
                structure = Some(s.with_labels(labels).map_err(|e| at(span, &e))?);
            }
            "rel" => {
                let s = structure.as_mut().ok_or_else(|| at(span, &"`rel` before `domain`"))?;
                let (name, nspan) = cur.expect_ident()?;
                let arity = s
                    .signature()
                    .arity(&name)
                    .ok_or_else(|| at(nspan, &format!("relation `{name}` not in signature")))?;
                cur.expect_punct("=")?;
                cur.expect_punct("{")?;
                if !cur.eat_punct("}") {
                    loop {
                        let tspan = cur.span();
                        let tuple = if cur.eat_punct("(") {
                            let mut t = Vec::new();
                            loop {
                                t.push(cur.expect_int()?.0 as usize);
                                if cur.eat_punct(")") {
                                    break;
                                }
                                cur.expect_punct(",")?;
                            }
                            t
                        } else {
                            vec![cur.expect_int()?.0 as usize]
                        };
                        if tuple.len() != arity {
                            return Err(at(
                                tspan,
                                &format!("relation `{name}` has arity {arity}, tuple has {}", tuple.len()),
                            ));
                        }
                        s.add_tuple(&name, tuple).map_err(|e| at(tspan, &e))?;
                        if cur.eat_punct("}") {
                            break;
                        }
                        cur.expect_punct(",")?;
                    }
                }
                cur.expect_punct(";")?;
            }
            "rows" => {
                // whitespace-separated integer rows, one tuple per `arity` numbers
                let s = structure.as_mut().ok_or_else(|| at(span, &"`rows` before `domain`"))?;
                let (name, nspan) = cur.expect_ident()?;
                let arity = s
                    .signature()
                    .arity(&name)
                    .ok_or_else(|| at(nspan, &format!("relation `{name}` not in signature")))?;
                let mut nums: Vec<(usize, Span)> = Vec::new();
                while let Tok::Int(n) = *cur.peek() {
                    nums.push((n as usize, cur.next().span));
                }
                let end = cur.expect_punct(";")?;
                if !nums.len().is_multiple_of(arity) {
                    return Err(at(
                        end,
                        &format!("{} numbers do not form rows of {arity}", nums.len()),
                    ));
                }
                for row in nums.chunks(arity) {
                    let tuple = row.iter().map(|(n, _)| *n).collect();
                    s.add_tuple(&name, tuple).map_err(|e| at(row[0].1, &e))?;
                }
            }
            "const" => {
                let s = structure.as_mut().ok_or_else(|| at(span, &"`const` before `domain`"))?;
                let (name, nspan) = cur.expect_ident()?;
                cur.expect_punct("=")?;
                let (e, _) = cur.expect_int()?;
                cur.expect_punct(";")?;
                s.set_constant(&name, e as usize).map_err(|e| at(nspan, &e))?;
            }
            "equality" | "membership" => {
                let s = structure
                    .as_mut()
                    .ok_or_else(|| at(span, &format!("`{kw}` before `domain`")))?;
                let (name, nspan) = cur.expect_ident()?;
                cur.expect_punct(";")?;
                let res = if kw == "equality" {
                    s.designate_equality(&name)
                } else {
                    s.designate_membership(&name)
                };
                res.map_err(|e| at(nspan, &e))?;
            }
            "formula" => {
                let (name, nspan) = cur.expect_ident()?;
                cur.expect_punct("=")?;
                let f = formula(&mut cur)?;
                cur.expect_punct(";")?;
                push_formula(&mut formulas, name, f, nspan)?;
            }
            "define" => {
                // define NAME(x, y);  expands `x = y` by agreement on every predicate
                let (name, nspan) = cur.expect_ident()?;
                cur.expect_punct("(")?;
                let (x, _) = cur.expect_ident()?;
                cur.expect_punct(",")?;
                let (y, yspan) = cur.expect_ident()?;
                cur.expect_punct(")")?;
                cur.expect_punct(";")?;
                if x == y {
                    return Err(at(yspan, &"the two variables must differ"));
                }
                let sig = signature.get_or_insert_with(Signature::new);
                let f = expand_defined_identity(sig, None, &x, &y);
                push_formula(&mut formulas, name, f, nspan)?;
            }
            _ => return Err(at(span, &format!("unknown statement `{kw}`"))),
        }
    }

    let signature = signature.unwrap_or_default();
    if let Some(s) = &structure {
        if let Some(c) = s
            .signature()
            .constants()
            .iter()
            .find(|c| s.constant(c).is_none())
        {
            return Err(LogicError::UninterpretedConstant(c.clone()));
        }
    }
    Ok(QlogDocument {
        signature,
        structure,
        formulas,
    })
}

fn push_formula(
    formulas: &mut Vec<(String, Formula)>,
    name: String,
    f: Formula,
    span: Span,
) -> Result<(), LogicError> {
    if formulas.iter().any(|(n, _)| *n == name) {
        return Err(ParseError::at(span, format!("formula `{name}` defined twice")).into());
    }
    formulas.push((name, f));
    Ok(())
}

fn formula(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut lhs = implication(cur)?;
    while cur.eat_punct("<->") {
        lhs = Formula::iff(lhs, implication(cur)?);
    }
    Ok(lhs)
}

fn implication(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let lhs = disjunction(cur)?;
    if cur.eat_punct("->") {
        return Ok(Formula::implies(lhs, implication(cur)?));
    }
    Ok(lhs)
}

fn disjunction(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut lhs = conjunction(cur)?;
    while cur.eat_punct("|") || cur.eat_keyword("or") {
        lhs = Formula::or(lhs, conjunction(cur)?);
    }
    Ok(lhs)
}

fn conjunction(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut lhs = unary(cur)?;
    while cur.eat_punct("&") || cur.eat_keyword("and") {
        lhs = Formula::and(lhs, unary(cur)?);
    }
    Ok(lhs)
}

fn unary(cur: &mut Cursor) -> Result<Formula, ParseError> {
    if cur.eat_punct("~") || cur.eat_punct("!") || cur.eat_keyword("not") {
        return Ok(Formula::not(unary(cur)?));
    }
    for (kw, forall) in [("forall", true), ("exists", false)] {
        if cur.eat_keyword(kw) {
            let (v, vspan) = cur.expect_ident()?;
            if KEYWORDS.contains(&v.as_str()) {
                return Err(ParseError::at(vspan, format!("`{v}` is a keyword")));
            }
            let body = if cur.eat_punct(".") { formula(cur)? } else { unary(cur)? };
            return Ok(if forall {
                Formula::forall(&v, body)
            } else {
                Formula::exists(&v, body)
            });
        }
    }
    if cur.eat_punct("(") {
        let f = formula(cur)?;
        cur.expect_punct(")")?;
        return Ok(f);
    }
    if cur.eat_keyword("true") {
        return Ok(Formula::True);
    }
    if cur.eat_keyword("false") {
        return Ok(Formula::False);
    }
    if cur.eat_punct("$") {
        let (name, _) = cur.expect_ident()?;
        let args = arguments(cur)?;
        return Ok(Formula::Schema(name, args));
    }
    if let Tok::Ident(name) = cur.peek().clone() {
        if matches!(cur.peek_at(1), Tok::Punct("(")) {
            let span = cur.next().span;
            if KEYWORDS.contains(&name.as_str()) {
                return Err(ParseError::at(span, format!("`{name}` is a keyword")));
            }
            let args = arguments(cur)?;
            return Ok(Formula::Atom(name, args));
        }
    }
    let lhs = term(cur)?;
    if cur.eat_punct("=") {
        return Ok(Formula::Eq(lhs, term(cur)?));
    }
    if cur.eat_punct("!=") {
        return Ok(Formula::not(Formula::Eq(lhs, term(cur)?)));
    }
    Err(cur.unexpected("`=` or `!=`"))
}

fn arguments(cur: &mut Cursor) -> Result<Vec<Term>, ParseError> {
    cur.expect_punct("(")?;
    let mut args = Vec::new();
    if cur.eat_punct(")") {
        return Ok(args);
    }
    loop {
        args.push(term(cur)?);
        if cur.eat_punct(")") {
            return Ok(args);
        }
        cur.expect_punct(",")?;
    }
}

fn term(cur: &mut Cursor) -> Result<Term, ParseError> {
    match cur.peek().clone() {
        Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()) => {
            cur.next();
            Ok(Term::Name(n))
        }
        Tok::Int(e) => {
            cur.next();
            Ok(Term::Elem(e as usize))
        }
        _ => Err(cur.unexpected("term")),
    }
}

/// Names a formula uses as predicates, with the arities they are used at.
pub fn predicates_used(f: &Formula) -> BTreeSet<(String, usize)> {
    let mut out = BTreeSet::new();
    fn walk(f: &Formula, out: &mut BTreeSet<(String, usize)>) {
        match f {
            Formula::Atom(p, args) => {
                out.insert((p.clone(), args.len()));
            }
            Formula::True | Formula::False | Formula::Eq(..) | Formula::Schema(..) => {}
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => walk(g, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                walk(a, out);
                walk(b, out);
            }
        }
    }
    walk(f, &mut out);
    out
}
