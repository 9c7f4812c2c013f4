//! A small recursive-descent parser shared by scalars, torus elements and
//! commutative polynomials.
//!
//! Grammar: signed sums of products; a product is a sequence of factors joined
//! by `*` or juxtaposition; a factor is a number, identifier or parenthesized
//! expression with an optional integer exponent `^k`. `a / n` divides by an
//! integer literal, so `3/2` is a rational.

use std::sync::Arc;

use num::{BigInt, BigRational, One};

use crate::cyclotomic::{CycField, CycScalar};
use crate::error::{Error, Result};
use crate::qtorus::{AlgebraSpec, Element};

/// Ring operations the parser needs.
pub trait ExprAlgebra {
    type Value: Clone;
    fn field(&self) -> &Arc<CycField>;
    fn scalar(&self, s: CycScalar) -> Self::Value;
    fn variable(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn pow(&self, a: &Self::Value, k: i64) -> Result<Self::Value>;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Num(s.parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                offset: pos,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, A: ExprAlgebra> {
    alg: &'a A,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl<'a, A: ExprAlgebra> Parser<'a, A> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<A::Value> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = self.alg.neg(&acc);
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.alg.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.alg.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<A::Value> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let f = self.power()?;
                acc = self.alg.mul(&acc, &f)?;
            } else if self.eat('/') {
                let Some(Tok::Num(n)) = self.peek().cloned() else {
                    return self.err("division is only supported by integer literals");
                };
                self.pos += 1;
                if n == BigInt::from(0) {
                    return Err(Error::Arithmetic("division by zero".into()));
                }
                let inv = CycScalar::from_rational(self.alg.field(), BigRational::new(BigInt::one(), n));
                acc = self.alg.mul(&acc, &self.alg.scalar(inv))?;
            } else if self.starts_factor() {
                let f = self.power()?;
                acc = self.alg.mul(&acc, &f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<A::Value> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = if self.eat('-') {
                true
            } else {
                self.eat('+');
                false
            };
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return self.err("expected an integer exponent");
            };
            self.pos += 1;
            let k: i64 = match i64::try_from(n) {
                Ok(k) => k,
                Err(_) => return self.err("exponent out of range"),
            };
            return self.alg.pow(&base, if neg { -k } else { k });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<A::Value> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self
                    .alg
                    .scalar(CycScalar::from_rational(self.alg.field(), BigRational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                let Some(v) = self.alg.variable(&name) else {
                    return self.err(format!("unknown symbol '{name}'"));
                };
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            _ => self.err("expected a number, symbol or '('"),
        }
    }
}

pub fn parse_with<A: ExprAlgebra>(alg: &A, src: &str) -> Result<A::Value> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        alg,
        toks,
        pos: 0,
        len: src.len(),
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

/// Parses an integer index out of `prefix<i>`, 1-based.
pub(crate) fn indexed_symbol(name: &str, prefix: &str, count: usize) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let i: usize = rest.parse().ok()?;
    (1..=count).contains(&i).then(|| i - 1)
}

pub(crate) fn scalar_pow(s: &CycScalar, k: i64) -> Result<CycScalar> {
    if k >= 0 {
        Ok(s.pow(k as u64))
    } else {
        Ok(s.inverse()?.pow(k.unsigned_abs()))
    }
}

struct Scalars<'a>(&'a Arc<CycField>);

impl ExprAlgebra for Scalars<'_> {
    type Value = CycScalar;
    fn field(&self) -> &Arc<CycField> {
        self.0
    }
    fn scalar(&self, s: CycScalar) -> CycScalar {
        s
    }
    fn variable(&self, name: &str) -> Option<CycScalar> {
        (name == "e").then(|| CycScalar::eps_pow(self.0, 1))
    }
    fn add(&self, a: &CycScalar, b: &CycScalar) -> CycScalar {
        a + b
    }
    fn sub(&self, a: &CycScalar, b: &CycScalar) -> CycScalar {
        a - b
    }
    fn mul(&self, a: &CycScalar, b: &CycScalar) -> Result<CycScalar> {
        Ok(a * b)
    }
    fn neg(&self, a: &CycScalar) -> CycScalar {
        -a
    }
    fn pow(&self, a: &CycScalar, k: i64) -> Result<CycScalar> {
        scalar_pow(a, k)
    }
}

/// Parses a scalar written as a polynomial in `e`, e.g. `-1 - e` or `3/2*e^2`.
pub fn parse_scalar(field: &Arc<CycField>, src: &str) -> Result<CycScalar> {
    parse_with(&Scalars(field), src)
}

struct Elements<'a>(&'a AlgebraSpec);

impl ExprAlgebra for Elements<'_> {
    type Value = Element;
    fn field(&self) -> &Arc<CycField> {
        self.0.field()
    }
    fn scalar(&self, s: CycScalar) -> Element {
        Element::constant(self.0, s)
    }
    fn variable(&self, name: &str) -> Option<Element> {
        if name == "e" {
            return Some(Element::constant(self.0, CycScalar::eps_pow(self.0.field(), 1)));
        }
        indexed_symbol(name, "x", self.0.rank()).map(|i| Element::generator(self.0, i))
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        a.add(b)
    }
    fn sub(&self, a: &Element, b: &Element) -> Element {
        a.sub(b)
    }
    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(a.mul(b, self.0))
    }
    fn neg(&self, a: &Element) -> Element {
        a.neg()
    }
    fn pow(&self, a: &Element, k: i64) -> Result<Element> {
        if k >= 0 {
            return Ok(a.pow(k as u32, self.0));
        }
        let inv = monomial_inverse(a, self.0)?;
        Ok(inv.pow(k.unsigned_abs() as u32, self.0))
    }
}

/// Inverse of a single term `c · x^a`; requires `-a` to be admissible.
pub fn monomial_inverse(m: &Element, spec: &AlgebraSpec) -> Result<Element> {
    if m.len() != 1 {
        return Err(Error::Arithmetic(format!("{m} is not a unit")));
    }
    let (a, c) = m.terms().next().unwrap();
    let neg: Vec<i64> = a.iter().map(|x| -x).collect();
    spec.check_exponent(&neg)?;
    // (x^a)^{-1} = ε^{κ(a,a)} x^{-a}
    let coef = c.inverse()?.mul_eps_pow(spec.kappa(a, a));
    Ok(Element::monomial(neg, coef))
}

/// Parses an element such as `x1^2 x2 - (1 + e) * x2^-1`.
pub fn parse_element(spec: &AlgebraSpec, src: &str) -> Result<Element> {
    let e = parse_with(&Elements(spec), src)?;
    e.validate(spec)?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars_round_trip_through_display() {
        let f = CycField::new(5).unwrap();
        for src in ["-1 - e", "3/2*e - e^3", "0", "7", "e^2"] {
            let s = parse_scalar(&f, src).unwrap();
            assert_eq!(s.to_string(), src);
        }
        assert_eq!(parse_scalar(&f, "e^5").unwrap(), CycScalar::one(&f));
        assert_eq!(parse_scalar(&f, "e^-1").unwrap(), CycScalar::eps_pow(&f, 4));
        assert!(matches!(parse_scalar(&f, "e +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_scalar(&f, "y"), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn elements_follow_the_relations() {
        let spec = AlgebraSpec::new(2, vec![vec![0, 1], vec![-1, 0]], vec![false, false]).unwrap();
        let a = parse_element(&spec, "x2 x1").unwrap();
        assert_eq!(a, parse_element(&spec, "-x1*x2").unwrap());
        assert_eq!(a.to_string(), "-x1 x2");
        let b = parse_element(&spec, "4 * x1^2 x2^2 - 3/2").unwrap();
        assert_eq!(b.to_string(), "-3/2 + 4 * x1^2 x2^2");
        assert!(matches!(
            parse_element(&spec, "x1^-1"),
            Err(Error::InvertibilityViolation { .. })
        ));
        assert!(parse_element(&spec, "x3").is_err());
    }

    #[test]
    fn inverses_in_a_torus() {
        let spec = AlgebraSpec::new(3, vec![vec![0, 1], vec![-1, 0]], vec![true, true]).unwrap();
        let m = parse_element(&spec, "(1 + e) x1 x2^2").unwrap();
        let inv = monomial_inverse(&m, &spec).unwrap();
        assert_eq!(m.mul(&inv, &spec), Element::one(&spec));
        assert_eq!(inv.mul(&m, &spec), Element::one(&spec));
        let p = parse_element(&spec, "(x1 x2)^-2").unwrap();
        assert_eq!(p.mul(&parse_element(&spec, "(x1 x2)^2").unwrap(), &spec), Element::one(&spec));
    }
}
