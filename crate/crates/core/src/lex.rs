//! Tokenizer shared by the quasi-set text format and the `.qlog` logic DSL.

use std::fmt;

use thiserror::Error;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(span: Span, message: impl Into<String>) -> Self {
        ParseError {
            line: span.line,
            col: span.col,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// Unsigned integer literal.
    Int(u64),
    /// Decimal literal with a fraction and/or exponent, kept verbatim.
    Decimal(String),
    Str(String),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Decimal(s) => write!(f, "number `{s}`"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

// Longest first.
const PUNCTS: &[&str] = &[
    "<->", "->", ":=", "!=", "{", "}", "[", "]", "(", ")", ",", ":", ";", "=", "/", "-", "+", "*",
    "~", "&", "|", "!", ".", "$",
];

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }

    'outer: while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        let span = Span { line, col };
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                bump!();
            }
            let word: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Ident(word),
                span,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                bump!();
            }
            let mut decimal = false;
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                decimal = true;
                bump!();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    bump!();
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    decimal = true;
                    while i < j {
                        bump!();
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        bump!();
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let tok = if decimal {
                Tok::Decimal(text)
            } else {
                Tok::Int(
                    text.parse()
                        .map_err(|_| ParseError::at(span, "integer literal out of range"))?,
                )
            };
            out.push(Token { tok, span });
            continue;
        }
        if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                if i >= chars.len() {
                    return Err(ParseError::at(span, "unterminated string literal"));
                }
                match chars[i] {
                    '"' => {
                        bump!();
                        break;
                    }
                    '\\' if i + 1 < chars.len() => {
                        bump!();
                        s.push(chars[i]);
                        bump!();
                    }
                    '\n' => return Err(ParseError::at(span, "newline in string literal")),
                    ch => {
                        s.push(ch);
                        bump!();
                    }
                }
            }
            out.push(Token {
                tok: Tok::Str(s),
                span,
            });
            continue;
        }
        for p in PUNCTS {
            let pc: Vec<char> = p.chars().collect();
            if chars[i..].starts_with(&pc) {
                for _ in 0..pc.len() {
                    bump!();
                }
                out.push(Token {
                    tok: Tok::Punct(p),
                    span,
                });
                continue 'outer;
            }
        }
        return Err(ParseError::at(span, format!("unexpected character `{c}`")));
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, col },
    });
    Ok(out)
}

/// Cursor over a token stream with the usual expect/eat helpers.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Cursor {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, offset: usize) -> &Tok {
        let idx = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[idx].tok
    }

    pub fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.is_keyword(kw) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::at(self.span(), message)
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    pub fn expect_punct(&mut self, p: &str) -> Result<Span, ParseError> {
        if self.is_punct(p) {
            Ok(self.next().span)
        } else {
            Err(self.unexpected(&format!("`{p}`")))
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<Span, ParseError> {
        if self.is_keyword(kw) {
            Ok(self.next().span)
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, Span), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((s, self.next().span)),
            _ => Err(self.unexpected("identifier")),
        }
    }

    pub fn expect_int(&mut self) -> Result<(u64, Span), ParseError> {
        match *self.peek() {
            Tok::Int(n) => Ok((n, self.next().span)),
            _ => Err(self.unexpected("integer")),
        }
    }

    pub fn expect_str(&mut self) -> Result<(String, Span), ParseError> {
        match self.peek().clone() {
            Tok::Str(s) => Ok((s, self.next().span)),
            _ => Err(self.unexpected("string literal")),
        }
    }
}
