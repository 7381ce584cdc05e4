//! Recursive-descent parser for scalar and polynomial expressions.
//!
//! Grammar (whitespace ignored, `−` accepted as `-`):
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := unary (("*"|"/") unary | implicit)*
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | "x" | "y" | "t" | "(" expr ")"
//! ```
//!
//! `implicit` is juxtaposition with a variable or a parenthesis, so `2t`,
//! `3x^2y` and `2(t+1)` parse as products. Division is only allowed by
//! expressions free of `x` and `y`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::BivPoly;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    /// Character offset into the input.
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(digits.parse().expect("ascii digits"))));
                continue;
            }
            'x' | 'y' | 't' => Tok::Var(c),
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError { pos: i, msg: format!("unexpected character '{other}'") });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<F: Field> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    allow_xy: bool,
    _field: std::marker::PhantomData<F>,
}

impl<F: Field> Parser<F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<BivPoly<F>, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                self.term()?.neg()
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
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivPoly<F>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    let Some(c) = rhs.as_constant() else {
                        return Err(ParseError { pos, msg: "division by a non-constant".into() });
                    };
                    let inv = c.inv().map_err(|_| ParseError { pos, msg: "division by zero".into() })?;
                    acc = acc.scale(&inv);
                }
                Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BivPoly<F>, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<BivPoly<F>, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return self.err("expected a nonnegative integer exponent");
        };
        self.at += 1;
        let e: u32 = n
            .try_into()
            .map_err(|_| ParseError { pos, msg: "exponent too large".into() })?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<BivPoly<F>, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(BivPoly::constant(F::from_rational(&BigRational::from_integer(n))))
            }
            Some(Tok::Var('t')) => {
                self.at += 1;
                match F::parameter() {
                    Some(t) => Ok(BivPoly::constant(t)),
                    None => Err(ParseError { pos, msg: format!("the field {} has no parameter t", F::NAME) }),
                }
            }
            Some(Tok::Var(v)) => {
                if !self.allow_xy {
                    return Err(ParseError { pos, msg: format!("variable '{v}' not allowed in a scalar") });
                }
                self.at += 1;
                Ok(if v == 'x' { BivPoly::x() } else { BivPoly::y() })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn run<F: Field>(text: &str, allow_xy: bool) -> Result<BivPoly<F>, ParseError> {
    let toks = lex(text)?;
    let end = text.chars().count();
    if toks.is_empty() {
        return Err(ParseError { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser::<F> { toks, at: 0, end, allow_xy, _field: std::marker::PhantomData };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a polynomial in `x` and `y` with coefficients in `F`.
pub fn parse_poly<F: Field>(text: &str) -> Result<BivPoly<F>, ParseError> {
    run(text, true)
}

/// Parses a scalar of `F`.
pub fn parse_scalar<F: Field>(text: &str) -> Result<F, ParseError> {
    let p = run::<F>(text, false)?;
    Ok(p.as_constant().unwrap_or_else(F::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{RatFunc, Rational};

    #[test]
    fn polynomial_with_implicit_products() {
        let p: BivPoly<Rational> = parse_poly("3x^2y - y^3 + 1/2*x").unwrap();
        assert_eq!(p.coeff(2, 1), Rational::from_i64(3));
        assert_eq!(p.coeff(0, 3), Rational::from_i64(-1));
        assert_eq!(p.coeff(1, 0), Rational::from_ratio(1, 2));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly::<Rational>("x + * y").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_poly::<Rational>("x / y").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_poly::<Rational>("(x + y").unwrap_err();
        assert_eq!(e.pos, 6);
        let e = parse_poly::<Rational>("x % 2").unwrap_err();
        assert_eq!(e.pos, 2);
    }

    #[test]
    fn ratfunc_coefficients() {
        let p: BivPoly<RatFunc> = parse_poly("(t+1)/2*x*y - t*y^2").unwrap();
        let t = RatFunc::parameter().unwrap();
        assert_eq!(p.coeff(1, 1), t.add(&RatFunc::one()).mul(&RatFunc::from_ratio(1, 2)));
        assert_eq!(p.coeff(0, 2), t.neg());
    }

    #[test]
    fn minus_binds_below_power() {
        let p: BivPoly<Rational> = parse_poly("-x^2").unwrap();
        assert_eq!(p.coeff(2, 0), Rational::from_i64(-1));
    }
}
