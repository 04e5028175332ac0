//! Text grammar for polynomials.
//!
//! ```text
//! expr   := [+|-] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Integers are reduced modulo `p`. The variables are `t`, `x` (bivariate
//! input only) and `u`, the generator of an extension field. Juxtaposition
//! multiplies, so `(x+1)(x+t)` and `2t` are accepted.

use crate::bivariate::BiPoly;
use crate::field::Field;
use crate::polyring::{Poly, PolyRing};
use crate::{Error, Result};

const MAX_EXPONENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Num(u64),
    Var(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let mut v: u64 = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i].1 as u64 - '0' as u64))
                        .ok_or(Error::Syntax { pos, msg: "integer literal too large".into() })?;
                    i += 1;
                }
                out.push((Tok::Num(v), pos));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    name.push(chars[i].1);
                    i += 1;
                }
                out.push((Tok::Ident(name), pos));
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") }),
                };
                out.push((tok, pos));
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(Error::Syntax { pos: self.pos(), msg: "unexpected token".into() }),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let pos = self.pos();
            match self.peek() {
                Some(&Tok::Num(e)) => {
                    if e > MAX_EXPONENT {
                        return Err(Error::Syntax { pos, msg: "exponent too large".into() });
                    }
                    self.at += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(Error::Syntax { pos, msg: "expected a nonnegative integer exponent".into() }),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.at += 1;
                Ok(Expr::Num(v))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Expr::Var(name, pos))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Syntax { pos: self.pos(), msg: "expected `)`".into() });
                }
                self.at += 1;
                Ok(inner)
            }
            Some(_) => Err(Error::Syntax { pos, msg: "expected a number, variable or `(`".into() }),
            None => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, at: 0, end: text.len() };
    let e = parser.expr()?;
    parser.expect_end()?;
    Ok(e)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    T,
    X,
    Generator,
}

fn evaluate(ring: &PolyRing, e: &Expr, vars: &[(&str, Role)]) -> Result<BiPoly> {
    Ok(match e {
        Expr::Num(v) => {
            let p = ring.field().p() as u64;
            BiPoly::constant(ring.from_ints(&[(v % p) as i64]))
        }
        Expr::Var(name, pos) => {
            let role = vars
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, r)| *r)
                .ok_or_else(|| Error::UnknownVariable { name: name.clone(), pos: *pos })?;
            match role {
                Role::T => BiPoly::constant(Poly::t()),
                Role::X => BiPoly::x(),
                Role::Generator => {
                    BiPoly::constant(ring.constant(ring.field().generator().expect("extension field")))
                }
            }
        }
        Expr::Add(a, b) => ring.bi_add(&evaluate(ring, a, vars)?, &evaluate(ring, b, vars)?),
        Expr::Sub(a, b) => ring.bi_sub(&evaluate(ring, a, vars)?, &evaluate(ring, b, vars)?),
        Expr::Neg(a) => ring.bi_neg(&evaluate(ring, a, vars)?),
        Expr::Mul(a, b) => ring.bi_mul(&evaluate(ring, a, vars)?, &evaluate(ring, b, vars)?),
        Expr::Pow(a, k) => ring.bi_pow(&evaluate(ring, a, vars)?, *k),
    })
}

fn field_vars(field: &Field, with_x: bool) -> Vec<(&'static str, Role)> {
    let mut vars = vec![("t", Role::T)];
    if with_x {
        vars.push(("x", Role::X));
    }
    if !field.is_prime_field() {
        vars.push(("u", Role::Generator));
    }
    vars
}

pub(crate) fn parse_bipoly(ring: &PolyRing, text: &str) -> Result<BiPoly> {
    evaluate(ring, &parse_expr(text)?, &field_vars(ring.field(), true))
}

pub(crate) fn parse_poly(ring: &PolyRing, text: &str) -> Result<Poly> {
    let f = evaluate(ring, &parse_expr(text)?, &field_vars(ring.field(), false))?;
    Ok(f.xcoeffs().first().cloned().unwrap_or_default())
}

/// Parses a polynomial in `u` over `F_p`, returning its coefficients lowest
/// degree first. Used for `--modulus`.
pub fn parse_modulus(p: u64, text: &str) -> Result<Vec<u64>> {
    let ring = PolyRing::new(Field::prime(p)?);
    let f = evaluate(&ring, &parse_expr(text)?, &[("u", Role::T)])?;
    let poly = f.xcoeffs().first().cloned().unwrap_or_default();
    Ok(poly.coeffs().iter().map(|c| c.index() as u64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u64) -> PolyRing {
        PolyRing::new(Field::with_order(q).unwrap())
    }

    #[test]
    fn polynomial_forms() {
        let r = ring(3);
        assert_eq!(parse_poly(&r, "2*t^3 + t + 1").unwrap(), r.from_ints(&[1, 1, 0, 2]));
        assert_eq!(parse_poly(&r, " 2t^3+t +4 ").unwrap(), r.from_ints(&[1, 1, 0, 2]));
        assert_eq!(parse_poly(&r, "-t").unwrap(), r.from_ints(&[0, 2]));
        assert_eq!(parse_poly(&r, "(t+1)^2 - t^2").unwrap(), r.from_ints(&[1, 2]));
        assert_eq!(parse_poly(&r, "0").unwrap(), Poly::zero());
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(2);
        assert_eq!(
            parse_bipoly(&r, "x + y").unwrap_err(),
            Error::UnknownVariable { name: "y".into(), pos: 4 }
        );
        assert!(matches!(parse_poly(&r, "t + x"), Err(Error::UnknownVariable { pos: 4, .. })));
        assert!(matches!(parse_poly(&r, "u"), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse_poly(&r, "t^"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly(&r, "(t+1"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly(&r, "t $ 1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly(&r, ""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly(&r, "t)"), Err(Error::Syntax { pos: 1, .. })));
    }

    #[test]
    fn modulus_text() {
        assert_eq!(parse_modulus(3, "u^2+1").unwrap(), vec![1, 0, 1]);
        assert_eq!(parse_modulus(2, "u^3 + u + 1").unwrap(), vec![1, 1, 0, 1]);
        assert!(matches!(parse_modulus(2, "t^2"), Err(Error::UnknownVariable { .. })));
    }
}
