//! Text grammar for polynomials and rational functions.
//!
//! ```text
//! poly  := [sign] term (sign term)*
//! term  := coef ['*' mono] | mono
//! coef  := int ['/' int]
//! mono  := var ['^' int] ('*' var ['^' int])*
//! rf    := group ['/' group]
//! group := '(' poly ')' | poly
//! ```
//! Whitespace is insignificant and variables are ASCII identifiers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::Rational;
use super::order::TermOrder;
use super::poly::MultiPoly;
use super::ratfunc::RationalFunc;
use super::vars::Vars;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(s[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: VarSource<'a>,
}

enum VarSource<'a> {
    Fixed(&'a Vars),
    Collect(Vec<String>),
}

/// A parsed monomial before it is bound to a variable list.
type RawTerm = (Rational, Vec<(String, u32)>);

impl<'a> Parser<'a> {
    fn new(s: &str, vars: VarSource<'a>) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(s)?,
            pos: 0,
            end: s.len(),
            vars,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect_int(&mut self) -> Result<BigInt> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(n),
            _ => {
                self.pos -= 1;
                self.err("expected integer")
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let n = self.expect_int()?;
        match u32::try_from(n) {
            Ok(e) => Ok(e),
            Err(_) => self.err("exponent too large"),
        }
    }

    fn factor(&mut self) -> Result<(String, u32)> {
        let name = match self.bump() {
            Some(Tok::Ident(n)) => n,
            _ => {
                self.pos -= 1;
                return self.err("expected variable");
            }
        };
        let e = if self.peek() == Some(&Tok::Caret) {
            self.bump();
            self.exponent()?
        } else {
            1
        };
        Ok((name, e))
    }

    fn mono(&mut self) -> Result<Vec<(String, u32)>> {
        let mut fs = vec![self.factor()?];
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            fs.push(self.factor()?);
        }
        Ok(fs)
    }

    fn term(&mut self) -> Result<RawTerm> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let n = self.expect_int()?;
                let mut c = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) && matches!(self.peek2(), Some(Tok::Int(_))) {
                    self.bump();
                    let d = self.expect_int()?;
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    c = Rational::new(c.to_integer(), d);
                }
                if self.peek() == Some(&Tok::Star) {
                    self.bump();
                    Ok((c, self.mono()?))
                } else {
                    Ok((c, Vec::new()))
                }
            }
            Some(Tok::Ident(_)) => Ok((Rational::one(), self.mono()?)),
            _ => self.err("expected term"),
        }
    }

    fn raw_poly(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -1
            }
            Some(Tok::Plus) => {
                self.bump();
                1
            }
            _ => 1,
        };
        loop {
            let (c, m) = self.term()?;
            terms.push((if sign < 0 { -c } else { c }, m));
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => break,
            };
            self.bump();
        }
        Ok(terms)
    }

    fn note_vars(&mut self, terms: &[RawTerm]) -> Result<()> {
        match &mut self.vars {
            VarSource::Fixed(v) => {
                for (_, m) in terms {
                    for (name, _) in m {
                        if !v.contains(name) {
                            return Err(Error::UnknownVariable(name.clone()));
                        }
                    }
                }
            }
            VarSource::Collect(seen) => {
                for (_, m) in terms {
                    for (name, _) in m {
                        if !seen.contains(name) {
                            seen.push(name.clone());
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

fn build(terms: &[RawTerm], vars: &Vars) -> MultiPoly {
    let mut p = MultiPoly::zero(vars);
    for (c, m) in terms {
        let mut e = vec![0u32; vars.len()];
        for (name, k) in m {
            e[vars.index_of(name).expect("checked")] += k;
        }
        p.add_term(e, c.clone());
    }
    p
}

/// Parses a polynomial over a fixed variable list.
pub fn parse_poly(s: &str, vars: &Vars) -> Result<MultiPoly> {
    let mut p = Parser::new(s, VarSource::Fixed(vars))?;
    let terms = p.raw_poly()?;
    p.finish()?;
    p.note_vars(&terms)?;
    Ok(build(&terms, vars))
}

/// Parses a polynomial, collecting variables in order of first appearance.
pub fn parse_poly_auto(s: &str) -> Result<MultiPoly> {
    let mut p = Parser::new(s, VarSource::Collect(Vec::new()))?;
    let terms = p.raw_poly()?;
    p.finish()?;
    p.note_vars(&terms)?;
    let VarSource::Collect(names) = p.vars else {
        unreachable!()
    };
    Ok(build(&terms, &Vars::from(names)))
}

/// Parses a rational function `p`, `(p)`, `p/(q)` or `(p)/(q)`.
pub fn parse_ratfunc(s: &str, vars: &Vars) -> Result<RationalFunc> {
    let mut p = Parser::new(s, VarSource::Fixed(vars))?;
    let num = group(&mut p)?;
    let den = if p.peek() == Some(&Tok::Slash) {
        p.bump();
        if p.peek() != Some(&Tok::LParen) {
            return p.err("denominator must be parenthesized");
        }
        Some(group(&mut p)?)
    } else {
        None
    };
    p.finish()?;
    p.note_vars(&num)?;
    let n = build(&num, vars);
    match den {
        None => Ok(RationalFunc::from_poly(n)),
        Some(d) => {
            p.note_vars(&d)?;
            let d = build(&d, vars);
            if d.is_zero() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "zero denominator".into(),
                });
            }
            Ok(RationalFunc::new(n, d))
        }
    }
}

fn group(p: &mut Parser<'_>) -> Result<Vec<RawTerm>> {
    if p.peek() == Some(&Tok::LParen) {
        p.bump();
        let t = p.raw_poly()?;
        if p.bump() != Some(Tok::RParen) {
            p.pos -= 1;
            return p.err("expected `)`");
        }
        Ok(t)
    } else {
        p.raw_poly()
    }
}

/// Parses `int` or `int/int` with an optional sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational `{s}`"),
    };
    let mut parts = body.splitn(2, '/');
    let n: BigInt = parts.next().unwrap().trim().parse().map_err(|_| bad())?;
    let d: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    let q = Rational::new(n, d);
    Ok(if neg { -q } else { q })
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.vars().names();
        for (k, (e, c)) in self.sorted_terms(TermOrder::GrevLex).iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = e.iter().all(|&x| x == 0);
            if is_const {
                write_rational(f, &a)?;
                continue;
            }
            if !a.is_one() {
                write_rational(f, &a)?;
                write!(f, "*")?;
            }
            let mut first = true;
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", names[i])?;
                if x > 1 {
                    write!(f, "^{x}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "({})/({})", self.num(), self.den())
        }
    }
}
