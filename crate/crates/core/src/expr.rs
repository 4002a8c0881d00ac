//! A small recursive-descent parser for the polynomial and path expressions
//! used in input files: integer coefficients, identifiers, `+`, `-`, `*`,
//! `^` with a nonnegative integer exponent, and parentheses.
//!
//! Parsing produces an [`Expr`] tree; callers evaluate it into their own ring
//! (commutative polynomials, or linear combinations of paths) through
//! [`ExprRing`].

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at position {pos} in {input:?}")]
    UnexpectedChar { ch: char, pos: usize, input: String },
    #[error("unexpected end of input in {0:?}")]
    UnexpectedEnd(String),
    #[error("expected {expected} at position {pos} in {input:?}")]
    Expected { expected: &'static str, pos: usize, input: String },
    #[error("exponent too large: {0}")]
    ExponentTooLarge(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("{0}")]
    Eval(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(s.parse().expect("digits"))));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            _ => {
                return Err(ParseError::UnexpectedChar {
                    ch: c,
                    pos: start,
                    input: input.to_string(),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.input.len(), |(p, _)| *p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    // sum := ['-'] product (('+'|'-') product)*
    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if self.peek() == Some(&Tok::Minus) {
            self.next();
            Expr::Neg(Box::new(self.product()?))
        } else if self.peek() == Some(&Tok::Plus) {
            self.next();
            self.product()?
        } else {
            self.product()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // product := power ('*' power)*
    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    // power := atom ('^' int)?
    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let pos = self.here();
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .ok()
                        .filter(|&e: &u32| e <= 4096)
                        .ok_or_else(|| ParseError::ExponentTooLarge(self.input.to_string()))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                Some(_) => Err(ParseError::Expected {
                    expected: "integer exponent",
                    pos,
                    input: self.input.to_string(),
                }),
                None => Err(ParseError::UnexpectedEnd(self.input.to_string())),
            }
        } else {
            Ok(base)
        }
    }

    // atom := int | ident | '(' sum ')' | '-' atom
    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Ident(s)) => Ok(Expr::Var(s)),
            Some(Tok::Minus) => Ok(Expr::Neg(Box::new(self.atom()?))),
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                let pos = self.here();
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    Some(_) => Err(ParseError::Expected {
                        expected: "')'",
                        pos,
                        input: self.input.to_string(),
                    }),
                    None => Err(ParseError::UnexpectedEnd(self.input.to_string())),
                }
            }
            Some(_) => Err(ParseError::Expected {
                expected: "a number, a symbol or '('",
                pos,
                input: self.input.to_string(),
            }),
            None => Err(ParseError::UnexpectedEnd(self.input.to_string())),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(ParseError::UnexpectedEnd(input.to_string()));
    }
    let mut p = Parser { input, toks, pos: 0 };
    let e = p.sum()?;
    if p.pos < p.toks.len() {
        return Err(ParseError::Expected {
            expected: "an operator or end of input",
            pos: p.here(),
            input: input.to_string(),
        });
    }
    Ok(e)
}

/// A ring into which parsed expressions can be evaluated.
pub trait ExprRing {
    type Value: Clone;

    fn constant(&self, n: &BigInt) -> Result<Self::Value, ParseError>;
    fn symbol(&self, name: &str) -> Result<Self::Value, ParseError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
}

pub fn eval<R: ExprRing>(ring: &R, e: &Expr) -> Result<R::Value, ParseError> {
    Ok(match e {
        Expr::Int(n) => ring.constant(n)?,
        Expr::Var(s) => ring.symbol(s)?,
        Expr::Add(a, b) => ring.add(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Sub(a, b) => ring.sub(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Mul(a, b) => ring.mul(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Neg(a) => ring.neg(&eval(ring, a)?),
        Expr::Pow(a, k) => {
            let base = eval(ring, a)?;
            let mut acc = ring.constant(&BigInt::from(1))?;
            for _ in 0..*k {
                acc = ring.mul(&acc, &base);
            }
            acc
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Ints;

    impl ExprRing for Ints {
        type Value = i64;
        fn constant(&self, n: &BigInt) -> Result<i64, ParseError> {
            n.try_into().map_err(|_| ParseError::Eval("overflow".into()))
        }
        fn symbol(&self, name: &str) -> Result<i64, ParseError> {
            match name {
                "x" => Ok(2),
                "y" => Ok(3),
                _ => Err(ParseError::UnknownSymbol(name.into())),
            }
        }
        fn add(&self, a: &i64, b: &i64) -> i64 {
            a + b
        }
        fn sub(&self, a: &i64, b: &i64) -> i64 {
            a - b
        }
        fn mul(&self, a: &i64, b: &i64) -> i64 {
            a * b
        }
        fn neg(&self, a: &i64) -> i64 {
            -a
        }
    }

    fn ev(s: &str) -> i64 {
        eval(&Ints, &parse(s).unwrap()).unwrap()
    }

    #[test]
    fn precedence_and_signs() {
        assert_eq!(ev("1 + 2*3"), 7);
        assert_eq!(ev("-x^2"), -4);
        assert_eq!(ev("(x*y)^2 - 3*x"), 30);
        assert_eq!(ev("x-y-1"), -2);
        assert_eq!(ev("  x*  y "), 6);
        assert_eq!(ev("x^0"), 1);
        assert_eq!(ev("-(x+y)"), -5);
    }

    #[test]
    fn errors() {
        assert!(parse("").is_err());
        assert!(parse("x +").is_err());
        assert!(parse("(x").is_err());
        assert!(parse("x ^ y").is_err());
        assert!(parse("x $ y").is_err());
        assert!(parse("x y").is_err());
        assert!(matches!(eval(&Ints, &parse("z").unwrap()), Err(ParseError::UnknownSymbol(_))));
    }
}
