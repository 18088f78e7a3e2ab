//! Text forms for terms and arrows.
//!
//! Terms:
//!
//! ```text
//! term   := tensor (";" tensor)*        left-nested Seq, read left to right
//! tensor := atom ("*" atom)*            left-nested Tensor
//! atom   := "0" | "id" ("^" NAT)? | "sw" ("^" NAT "," NAT)? | NAME | "(" term ")"
//! ```
//!
//! `a ; b` means "first `a`, then `b`", the same order as [`Prop::then`].
//! The printer parenthesizes every composite, so its output re-parses to
//! the same tree.
//!
//! Arrows:
//!
//! ```text
//! corel N -> M : {0,1,3} {2} ...
//! cospan N -> M extra=K : {..} ...
//! rel N -> M : (j,i) (j,i) ...
//! span N -> M : j i count  j i count ...
//! ```
//!
//! Indices in `corel`/`cospan` blocks run over `0..N+M`, domain first. In
//! `rel`/`span`, `j` is a codomain index and `i` a domain index.
//!
//! [`Prop::then`]: crate::arrows::Prop::then

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arrows::{ArrowError, Boolean, Corelation, Cospan};
use crate::partition::{Partition, PartitionError};
use crate::semantics::AnyArrow;
use crate::theory::Term;
use crate::{Relation, Span};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Arrow(#[from] ArrowError),
}

impl From<PartitionError> for ParseError {
    fn from(e: PartitionError) -> Self {
        ParseError::Arrow(e.into())
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SyntaxError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn nat(&mut self) -> Result<usize, SyntaxError> {
        self.skip_ws();
        let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a natural number"));
        }
        let text = &self.rest()[..digits];
        let value = text.parse().map_err(|_| self.error("number too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn name(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars
            .find(|&(_, c)| !(c.is_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut cur = Cursor::new(text);
    let t = seq_expr(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

fn seq_expr(cur: &mut Cursor) -> Result<Term, SyntaxError> {
    let mut t = tensor_expr(cur)?;
    while cur.eat(";") {
        t = Term::seq(t, tensor_expr(cur)?);
    }
    Ok(t)
}

fn tensor_expr(cur: &mut Cursor) -> Result<Term, SyntaxError> {
    let mut t = atom(cur)?;
    while cur.eat("*") {
        t = Term::tensor(t, atom(cur)?);
    }
    Ok(t)
}

fn atom(cur: &mut Cursor) -> Result<Term, SyntaxError> {
    match cur.peek() {
        Some('(') => {
            cur.expect("(")?;
            let t = seq_expr(cur)?;
            cur.expect(")")?;
            Ok(t)
        }
        Some(c) if c.is_ascii_digit() => {
            let start = cur.pos;
            match cur.nat()? {
                0 => Ok(Term::Empty),
                _ => {
                    cur.pos = start;
                    Err(cur.error("only `0` may appear as a numeric term"))
                }
            }
        }
        Some(_) => {
            let Some(name) = cur.name() else {
                return Err(cur.error("expected a term"));
            };
            match name {
                "id" => Ok(if cur.eat("^") {
                    Term::Id(cur.nat()?)
                } else {
                    Term::Id(1)
                }),
                "sw" => {
                    if cur.eat("^") {
                        let n = cur.nat()?;
                        cur.expect(",")?;
                        Ok(Term::Sym(n, cur.nat()?))
                    } else {
                        Ok(Term::swap())
                    }
                }
                _ => Ok(Term::gen(name)),
            }
        }
        None => Err(cur.error("unexpected end of input")),
    }
}

/// Fully parenthesized text of a term.
pub fn format_term(t: &Term) -> String {
    t.to_string()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Empty => f.write_str("0"),
            Term::Id(1) => f.write_str("id"),
            Term::Id(k) => write!(f, "id^{k}"),
            Term::Sym(1, 1) => f.write_str("sw"),
            Term::Sym(n, m) => write!(f, "sw^{n},{m}"),
            Term::Gen(name) => f.write_str(name),
            Term::Seq(a, b) => write!(f, "({a} ; {b})"),
            Term::Tensor(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

impl FromStr for Term {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

fn header(cur: &mut Cursor, keyword: &str) -> Result<(usize, usize), SyntaxError> {
    cur.expect(keyword)?;
    let n = cur.nat()?;
    cur.expect("->")?;
    let m = cur.nat()?;
    Ok((n, m))
}

fn blocks(cur: &mut Cursor) -> Result<Vec<Vec<usize>>, SyntaxError> {
    let mut out = Vec::new();
    while cur.eat("{") {
        let mut block = Vec::new();
        if !cur.eat("}") {
            loop {
                block.push(cur.nat()?);
                if cur.eat("}") {
                    break;
                }
                cur.expect(",")?;
            }
        }
        out.push(block);
    }
    Ok(out)
}

impl FromStr for Partition {
    type Err = ParseError;

    /// The ground set is `0..=max` over the listed elements.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let raw = blocks(&mut cur)?;
        cur.finish()?;
        let size = raw.iter().flatten().max().map_or(0, |&x| x + 1);
        Ok(Partition::from_blocks(size, raw)?)
    }
}

impl FromStr for Corelation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let (n, m) = header(&mut cur, "corel")?;
        cur.expect(":")?;
        let raw = blocks(&mut cur)?;
        cur.finish()?;
        Ok(Corelation::from_blocks(n, m, raw)?)
    }
}

impl FromStr for Cospan {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let (n, m) = header(&mut cur, "cospan")?;
        cur.expect("extra")?;
        cur.expect("=")?;
        let extra = cur.nat()?;
        cur.expect(":")?;
        let raw = blocks(&mut cur)?;
        cur.finish()?;
        Ok(Cospan::new(Corelation::from_blocks(n, m, raw)?, extra))
    }
}

fn check_cell(cur: &Cursor, j: usize, i: usize, n: usize, m: usize) -> Result<(), SyntaxError> {
    if j >= m || i >= n {
        Err(cur.error(format!("entry ({j},{i}) outside a {m}x{n} matrix")))
    } else {
        Ok(())
    }
}

impl FromStr for Relation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let (n, m) = header(&mut cur, "rel")?;
        cur.expect(":")?;
        let mut r = Relation::zeros(n, m);
        while cur.eat("(") {
            let j = cur.nat()?;
            cur.expect(",")?;
            let i = cur.nat()?;
            cur.expect(")")?;
            check_cell(&cur, j, i, n, m)?;
            r.set(j, i, Boolean(true));
        }
        cur.finish()?;
        Ok(r)
    }
}

impl FromStr for Span {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let (n, m) = header(&mut cur, "span")?;
        cur.expect(":")?;
        let mut out = Span::zeros(n, m);
        let mut seen = vec![false; n * m];
        while cur.peek().is_some() {
            let j = cur.nat()?;
            let i = cur.nat()?;
            let count = cur.nat()?;
            check_cell(&cur, j, i, n, m)?;
            if std::mem::replace(&mut seen[j * n + i], true) {
                return Err(cur.error(format!("entry ({j},{i}) given twice")).into());
            }
            out.set(j, i, count as u64);
        }
        Ok(out)
    }
}

impl FromStr for AnyArrow {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        match cur.name() {
            Some("corel") => Ok(AnyArrow::Corel(s.parse()?)),
            Some("cospan") => Ok(AnyArrow::Cospan(s.parse()?)),
            Some("rel") => Ok(AnyArrow::Rel(s.parse()?)),
            Some("span") => Ok(AnyArrow::Span(s.parse()?)),
            _ => {
                cur.pos = 0;
                cur.skip_ws();
                Err(cur.error("expected one of corel, cospan, rel, span").into())
            }
        }
    }
}

/// True when the text looks like an arrow rather than a term.
pub fn is_arrow_text(text: &str) -> bool {
    let mut cur = Cursor::new(text);
    matches!(cur.name(), Some("corel" | "cospan" | "rel" | "span"))
        && cur.peek().is_some_and(|c| c.is_ascii_digit())
}
