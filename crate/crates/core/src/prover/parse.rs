//! A small language for C-finite identities, e.g.
//! `F(2n) = 2*F(n)*F(n+1) - F(n)^2` or `psum(F(n)) = F(n+2) - 1`.
//!
//! Atoms are named C-finite sequences applied to an index `a·n + b`. `F`
//! (Fibonacci) and `L` (Lucas) are predefined; more come from
//! [`Env::define`]. A bare `n` is the sequence `0, 1, 2, …`. Besides
//! `+ - * ^` the functions `psum(e)`, `shift(e, k)` and `section(e, m, r)`
//! are available.

use std::collections::BTreeMap;

use crate::arith::{parse_rational, parse_rational_list, Rational};
use crate::seq::CFiniteSeq;

use super::CFiniteExpr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} (at offset {offset})")]
pub struct ParseError {
    pub message: String,
    pub offset: usize,
}

fn err<T>(message: impl Into<String>, offset: usize) -> Result<T, ParseError> {
    Err(ParseError {
        message: message.into(),
        offset,
    })
}

/// Named C-finite atoms.
#[derive(Debug, Clone)]
pub struct Env {
    atoms: BTreeMap<String, CFiniteSeq>,
}

impl Default for Env {
    fn default() -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert("F".to_string(), CFiniteSeq::fibonacci());
        atoms.insert("L".to_string(), CFiniteSeq::lucas());
        Env { atoms }
    }
}

impl Env {
    pub fn get(&self, name: &str) -> Option<&CFiniteSeq> {
        self.atoms.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, seq: CFiniteSeq) {
        self.atoms.insert(name.into(), seq);
    }

    /// Adds an atom from `rec:1,-3,2;init:2,3` (annihilator coefficients,
    /// then initial terms).
    pub fn define(&mut self, name: &str, spec: &str) -> Result<(), ParseError> {
        if !is_identifier(name) || name == "n" || FUNCTIONS.contains(&name) {
            return err(format!("invalid atom name '{name}'"), 0);
        }
        let mut rec = None;
        let mut init = None;
        for part in spec.split(';') {
            let part = part.trim();
            let parsed = |text: &str| {
                parse_rational_list(text).or_else(|e| err(format!("bad number list: {e}"), 0))
            };
            if let Some(r) = part.strip_prefix("rec:") {
                rec = Some(parsed(r)?);
            } else if let Some(i) = part.strip_prefix("init:") {
                init = Some(parsed(i)?);
            } else if !part.is_empty() {
                return err(format!("unknown definition part '{part}'"), 0);
            }
        }
        let (Some(rec), Some(init)) = (rec, init) else {
            return err("definition needs rec:… and init:…", 0);
        };
        let seq = CFiniteSeq::new(rec, init).or_else(|e| err(e.to_string(), 0))?;
        self.atoms.insert(name.to_string(), seq);
        Ok(())
    }
}

const FUNCTIONS: [&str; 3] = ["psum", "shift", "section"];

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let v = parse_rational(&text[start..i]).or_else(|e| err(e.to_string(), start))?;
            out.push((Tok::Num(v), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*^(),=".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return err(format!("unexpected character '{c}'"), i);
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    env: &'a Env,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(format!("expected '{c}'"), self.offset())
        }
    }

    fn expr(&mut self) -> Result<CFiniteExpr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = e.add(self.term()?);
            } else if self.eat('-') {
                e = e.sub(self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<CFiniteExpr, ParseError> {
        let mut e = self.power()?;
        while self.eat('*') {
            e = e.mul(self.power()?);
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<CFiniteExpr, ParseError> {
        let base = self.unary()?;
        if self.eat('^') {
            let at = self.offset();
            let k = self.integer()?;
            if !(0..=64).contains(&k) {
                return err("exponent must be between 0 and 64", at);
            }
            return Ok(base.pow(k as u32));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<CFiniteExpr, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.primary()
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        let at = self.offset();
        match self.peek() {
            Some(Tok::Num(v)) if v.is_integer() => {
                let v = v.to_integer();
                self.pos += 1;
                let v: i64 = v.try_into().or_else(|_| err("integer out of range", at))?;
                Ok(if neg { -v } else { v })
            }
            _ => err("expected an integer", at),
        }
    }

    fn primary(&mut self) -> Result<CFiniteExpr, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                if let Some(Tok::Ident(_)) = self.peek() {
                    return err("write products with '*'", self.offset());
                }
                Ok(CFiniteExpr::Const(v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "n" => Ok(CFiniteExpr::atom(
                        "n",
                        CFiniteSeq::from_ints(&[1, -2, 1], &[0, 1]).expect("valid"),
                    )),
                    "psum" => {
                        self.expect('(')?;
                        let e = self.expr()?;
                        self.expect(')')?;
                        Ok(e.partial_sum())
                    }
                    "shift" => {
                        self.expect('(')?;
                        let e = self.expr()?;
                        self.expect(',')?;
                        let k = self.integer()?;
                        self.expect(')')?;
                        Ok(e.shift(k))
                    }
                    "section" => {
                        self.expect('(')?;
                        let e = self.expr()?;
                        self.expect(',')?;
                        let m_at = self.offset();
                        let m = self.integer()?;
                        self.expect(',')?;
                        let r = self.integer()?;
                        self.expect(')')?;
                        if m < 1 {
                            return err("section step must be positive", m_at);
                        }
                        Ok(e.multisection(m as usize, r))
                    }
                    _ => {
                        let Some(seq) = self.env.get(&name) else {
                            return err(format!("unknown atom '{name}'"), at);
                        };
                        let seq = seq.clone();
                        self.expect('(')?;
                        let (a, b) = self.index()?;
                        self.expect(')')?;
                        let atom = CFiniteExpr::atom(name, seq);
                        Ok(match a {
                            0 => {
                                let v = atom.terms_from(b, 1).or_else(|e| err(e.to_string(), at))?;
                                CFiniteExpr::Const(v[0].clone())
                            }
                            1 if b == 0 => atom,
                            1 => atom.shift(b),
                            a => atom.multisection(a as usize, b),
                        })
                    }
                }
            }
            _ => err("expected an expression", at),
        }
    }

    /// An index `a·n + b` with `a ≥ 0`.
    fn index(&mut self) -> Result<(i64, i64), ParseError> {
        let at = self.offset();
        let mut a = 0i64;
        let mut b = 0i64;
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                break;
            };
            first = false;
            let coeff = match self.peek() {
                Some(Tok::Num(_)) => Some(self.integer()?),
                _ => None,
            };
            let has_n = if self.peek() == Some(&Tok::Ident("n".into())) {
                self.pos += 1;
                true
            } else if coeff.is_some() && self.peek() == Some(&Tok::Sym('*')) {
                self.pos += 1;
                if self.peek() != Some(&Tok::Ident("n".into())) {
                    return err("expected 'n'", self.offset());
                }
                self.pos += 1;
                true
            } else {
                false
            };
            match (coeff, has_n) {
                (c, true) => a += sign * c.unwrap_or(1),
                (Some(c), false) => b += sign * c,
                (None, false) => return err("expected an index such as 2n+1", self.offset()),
            }
        }
        if a < 0 {
            return err("index must not decrease with n", at);
        }
        Ok((a, b))
    }
}

pub fn parse_expr(text: &str, env: &Env) -> Result<CFiniteExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        env,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return err("unexpected trailing input", p.offset());
    }
    Ok(e)
}

/// `lhs = rhs`, or `lhs` alone meaning `lhs = 0`.
pub fn parse_identity(text: &str, env: &Env) -> Result<(CFiniteExpr, CFiniteExpr), ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        env,
    };
    let lhs = p.expr()?;
    let rhs = if p.eat('=') {
        p.expr()?
    } else {
        CFiniteExpr::Const(Rational::default())
    };
    if p.pos != p.toks.len() {
        return err("unexpected trailing input", p.offset());
    }
    Ok((lhs, rhs))
}
