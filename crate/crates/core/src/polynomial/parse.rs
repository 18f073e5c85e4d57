//! Text syntax for polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [scalar '*'] factor ('*' factor)*
//! factor := var | '(' poly ')'
//! var    := 'x' integer
//! scalar := integer | p/q | decimal | scientific
//! ```
//!
//! Parentheses fix the tree shape. A chain of three or more factors without
//! parentheses associates to the left and produces a warning. A parenthesized
//! sum inside a product is distributed exactly.

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

use super::{Polynomial, Word};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Var(usize),
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, message: String| Error::SyntaxError { pos, message };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'*' => out.push((Tok::Star, start)),
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'x' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(err(start, "expected variable index after 'x'".into()));
                }
                let index = text[digits_start..i]
                    .parse()
                    .map_err(|_| err(start, "variable index too large".into()))?;
                out.push((Tok::Var(index), start));
                continue;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && matches!(bytes[i], b'e' | b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && matches!(bytes[j], b'+' | b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let value: Rational = text[start..i]
                    .parse()
                    .map_err(|_| err(start, format!("bad number {:?}", &text[start..i])))?;
                out.push((Tok::Num(value), start));
                continue;
            }
            _ => return Err(err(start, format!("unexpected character {:?}", c as char))),
        }
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

type Terms = Vec<(Rational, Word)>;

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    warnings: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::SyntaxError { pos: self.pos(), message: message.into() }
    }

    fn poly(&mut self) -> Result<Terms> {
        let mut negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut out = Terms::new();
        loop {
            let t = self.term()?;
            out.extend(t.into_iter().map(|(c, w)| if negative { (-c, w) } else { (c, w) }));
            negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(out),
            };
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let start = self.pos();
        let coeff = if let Tok::Num(_) = self.peek() {
            let Tok::Num(v) = self.bump() else { unreachable!() };
            if *self.peek() != Tok::Star {
                return Err(self.error("expected '*' after coefficient"));
            }
            self.bump();
            v
        } else {
            Rational::one()
        };
        let mut acc = self.factor()?;
        let mut factors = 1;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            acc = distribute(&acc, &rhs);
            factors += 1;
        }
        if factors >= 3 {
            self.warnings.push(format!(
                "position {start}: {factors} factors without parentheses were associated to the left"
            ));
        }
        Ok(acc.into_iter().map(|(c, w)| (c.mul_ref(&coeff), w)).collect())
    }

    fn factor(&mut self) -> Result<Terms> {
        match self.bump() {
            Tok::Var(k) => Ok(vec![(Rational::one(), Word::Var(k))]),
            Tok::LParen => {
                let inner = self.poly()?;
                if self.bump() != Tok::RParen {
                    self.at -= 1;
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            _ => {
                self.at = self.at.saturating_sub(1);
                Err(self.error("expected a variable or '('"))
            }
        }
    }
}

fn distribute(a: &Terms, b: &Terms) -> Terms {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (ca, wa) in a {
        for (cb, wb) in b {
            out.push((ca.mul_ref(cb), Word::mul(wa.clone(), wb.clone())));
        }
    }
    out
}

/// Parses a polynomial and returns any associativity warnings.
/// `num_vars` is the largest variable index that appears.
pub fn parse_with_warnings(text: &str) -> Result<(Polynomial, Vec<String>)> {
    parse_inner(text, None)
}

pub fn parse(text: &str) -> Result<Polynomial> {
    parse_inner(text, None).map(|(p, _)| p)
}

/// Parses with a declared number of variables; any index above it is an error.
pub fn parse_with_vars(text: &str, num_vars: usize) -> Result<Polynomial> {
    parse_inner(text, Some(num_vars)).map(|(p, _)| p)
}

fn parse_inner(text: &str, declared: Option<usize>) -> Result<(Polynomial, Vec<String>)> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "0" {
        return Ok((Polynomial::zero(declared.unwrap_or(0)), Vec::new()));
    }
    let mut parser = Parser { toks: lex(text)?, at: 0, warnings: Vec::new() };
    let terms = parser.poly()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error("unexpected trailing input"));
    }
    let max_seen = terms.iter().map(|(_, w)| w.max_var()).max().unwrap_or(0);
    let num_vars = declared.unwrap_or(max_seen);
    if terms.iter().any(|(_, w)| w.min_var() == 0) {
        return Err(Error::VariableIndexOutOfRange { index: 0, max: num_vars });
    }
    if max_seen > num_vars {
        return Err(Error::VariableIndexOutOfRange { index: max_seen, max: num_vars });
    }
    Ok((Polynomial::from_terms(num_vars, terms)?, parser.warnings))
}
