//! Input parsing: polynomial expressions and singular-point list files.
//!
//! Polynomial grammar: terms joined by `+`/`-`; a term is a product of
//! factors joined by `*`; a factor is a rational constant (`3`, `-1/2`), a
//! variable (`x`, `y`, `z`, `w` for the first four, or `x0`, `x1`, ... in
//! general) with an optional `^exponent`, or a parenthesized expression.
//!
//! Point files carry one point per line, coordinates as rationals separated
//! by colons (`0:1:-1`); `#` starts a comment.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use polespec::poly::Exponents;
use polespec::{HomPoly, PolyError, ProjPoint, Rat, SingularError};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PolyParseError {
    #[error("parse error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous: it mixes degrees {0} and {1}")]
    NotHomogeneous(usize, usize),
    #[error("polynomial must use at least 2 variables and have degree at least 1")]
    TooSmall,
}

#[derive(Debug, thiserror::Error)]
pub enum PointParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    WrongLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {source}")]
    BadPoint {
        line: usize,
        source: SingularError,
    },
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' | '−' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Token::Num(n)));
            }
            'x' => {
                let start = i;
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let idx = if i > digits_start {
                    text[digits_start..i].parse::<usize>().map_err(|_| {
                        PolyParseError::Syntax {
                            pos: start,
                            msg: "variable index too large".into(),
                        }
                    })?
                } else {
                    0
                };
                out.push((start, Token::Var(idx)));
            }
            'y' => {
                out.push((i, Token::Var(1)));
                i += 1;
            }
            'z' => {
                out.push((i, Token::Var(2)));
                i += 1;
            }
            'w' => {
                out.push((i, Token::Var(3)));
                i += 1;
            }
            other => {
                return Err(PolyParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(out)
}

/// Multivariate polynomial under construction, possibly inhomogeneous.
#[derive(Clone, Debug)]
struct RawPoly {
    terms: BTreeMap<Exponents, Rat>,
}

impl RawPoly {
    fn constant(c: Rat, nv: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nv], c);
        }
        RawPoly { terms }
    }

    fn variable(idx: usize, nv: usize) -> Self {
        let mut e = vec![0u16; nv];
        e[idx] = 1;
        RawPoly {
            terms: BTreeMap::from([(e, Rat::one())]),
        }
    }

    fn add(&self, other: &RawPoly, sign: i64) -> RawPoly {
        let mut terms = self.terms.clone();
        let sign = Rat::from_integer(sign.into());
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *slot += c * &sign;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        RawPoly { terms }
    }

    fn mul(&self, other: &RawPoly) -> RawPoly {
        let mut terms: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = terms.entry(e).or_insert_with(Rat::zero);
                *slot += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        RawPoly { terms }
    }

    fn pow(&self, e: u32) -> RawPoly {
        let nv = self.terms.keys().next().map_or(0, |k| k.len());
        let mut acc = RawPoly::constant(Rat::one(), nv);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    nv: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&(usize, Token)> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: &str) -> PolyParseError {
        let pos = self.peek().map_or(self.end, |(p, _)| *p);
        PolyParseError::Syntax {
            pos,
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<RawPoly, PolyParseError> {
        let mut sign = 1i64;
        while let Some((_, t)) = self.peek() {
            match t {
                Token::Plus => {
                    self.bump();
                }
                Token::Minus => {
                    sign = -sign;
                    self.bump();
                }
                _ => break,
            }
        }
        let mut acc = RawPoly::constant(Rat::zero(), self.nv).add(&self.term()?, sign);
        while let Some((_, t)) = self.peek() {
            let sign = match t {
                Token::Plus => 1,
                Token::Minus => -1,
                _ => break,
            };
            self.bump();
            let term = self.term()?;
            acc = acc.add(&term, sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RawPoly, PolyParseError> {
        let mut acc = self.factor()?;
        while let Some((_, Token::Star)) = self.peek() {
            self.bump();
            let rhs = self.factor()?;
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawPoly, PolyParseError> {
        let base = self.atom()?;
        if let Some((_, Token::Caret)) = self.peek() {
            self.bump();
            let Some((_, Token::Num(e))) = self.bump() else {
                return Err(self.err_here("expected an exponent after '^'"));
            };
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err_here("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RawPoly, PolyParseError> {
        match self.bump().cloned() {
            Some((_, Token::Num(n))) => {
                let mut value = Rat::from_integer(n);
                if let Some((_, Token::Slash)) = self.peek() {
                    self.bump();
                    let Some((pos, Token::Num(den))) = self.bump().cloned() else {
                        return Err(self.err_here("expected a denominator after '/'"));
                    };
                    if den.is_zero() {
                        return Err(PolyParseError::Syntax {
                            pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    value /= Rat::from_integer(den);
                }
                Ok(RawPoly::constant(value, self.nv))
            }
            Some((pos, Token::Var(idx))) => {
                if idx >= self.nv {
                    return Err(PolyParseError::Syntax {
                        pos,
                        msg: "variable index out of range".into(),
                    });
                }
                Ok(RawPoly::variable(idx, self.nv))
            }
            Some((_, Token::LParen)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Token::RParen)) => Ok(inner),
                    _ => Err(self.err_here("expected ')'")),
                }
            }
            _ => Err(self.err_here("expected a number, variable or '('")),
        }
    }
}

/// Parse and expand an expression into a homogeneous polynomial.
pub fn parse_polynomial(text: &str) -> Result<HomPoly, PolyParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(PolyParseError::Syntax {
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }
    let nv = tokens
        .iter()
        .filter_map(|(_, t)| match t {
            Token::Var(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0)
        .max(2);
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        nv,
        end: text.len(),
    };
    let raw = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(parser.err_here("trailing input"));
    }
    match HomPoly::new_input(nv, raw.terms) {
        Ok(p) => Ok(p),
        Err(PolyError::NotHomogeneous(a, b)) => Err(PolyParseError::NotHomogeneous(a, b)),
        Err(_) => Err(PolyParseError::TooSmall),
    }
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator '{num}'"))?;
    let d: BigInt = match den {
        Some(b) => b.parse().map_err(|_| format!("bad denominator '{b}'"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rat::new(n, d))
}

/// Parse a point list: one point per line, rational coordinates separated
/// by colons, `#` comments, blank lines ignored. All points must share one
/// coordinate count, and it must be at least `min_vars` (the number of
/// variables the polynomial mentions); a larger count widens the ring, so
/// cones like `x^2 + y^2` in the plane can be described by their points.
pub fn parse_points(text: &str, min_vars: usize) -> Result<Vec<ProjPoint>, PointParseError> {
    let mut out = Vec::new();
    let mut width: Option<usize> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let coords: Result<Vec<Rat>, String> = content.split(':').map(parse_rat).collect();
        let coords = coords.map_err(|msg| PointParseError::Malformed { line, msg })?;
        let expected = *width.get_or_insert(coords.len().max(min_vars));
        if coords.len() != expected {
            return Err(PointParseError::WrongLength {
                line,
                expected,
                found: coords.len(),
            });
        }
        let p = ProjPoint::new(coords).map_err(|source| PointParseError::BadPoint {
            line,
            source,
        })?;
        out.push(p);
    }
    Ok(out)
}
