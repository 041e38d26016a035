//! Operator expressions.
//!
//! ```text
//! expr   := ["-"] term { ("+" | "-") term }
//! term   := factor { "*" factor }
//! factor := atom ["^" nat]
//! atom   := rat | "x" | "D" | "a1".."a6" | "(" expr ")"
//! rat    := nat ["/" nat]
//! ```
//!
//! Whitespace is ignored. Products keep their order, so `D*x` parses to
//! `x*D + 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;
use weylkit::{ParamPoly, Rational, WeylOp};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {}", expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<&'static str> },
    #[error("exponent at offset {offset} exceeds {MAX_EXPONENT}")]
    ExponentOverflow { offset: usize },
    #[error("zero denominator at offset {offset}")]
    ZeroDenominator { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::ExponentOverflow { offset }
            | ParseError::ZeroDenominator { offset } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Signed summands; `true` marks subtraction.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    Rational(Rational),
    X,
    D,
    /// Parameter `a{k+1}`.
    Param(usize),
}

impl Expr {
    pub fn to_weyl(&self) -> weylkit::Result<WeylOp> {
        Ok(match self {
            Expr::Sum(items) => {
                let mut acc = WeylOp::zero();
                for (neg, e) in items {
                    let v = e.to_weyl()?;
                    acc = if *neg { &acc - &v } else { &acc + &v };
                }
                acc
            }
            Expr::Product(items) => {
                let mut acc = WeylOp::one();
                for e in items {
                    acc = acc.mul(&e.to_weyl()?)?;
                }
                acc
            }
            Expr::Power(base, e) => base.to_weyl()?.pow(*e)?,
            Expr::Rational(r) => WeylOp::constant(ParamPoly::constant(r.clone())),
            Expr::X => WeylOp::x(),
            Expr::D => WeylOp::d(),
            Expr::Param(k) => WeylOp::constant(ParamPoly::var(*k)),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sum(items) => {
                write!(f, "(")?;
                for (k, (neg, e)) in items.iter().enumerate() {
                    match (k, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Expr::Product(items) => {
                let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join("*"))
            }
            Expr::Power(b, e) => match **b {
                Expr::Product(_) | Expr::Power(..) => write!(f, "({b})^{e}"),
                _ => write!(f, "{b}^{e}"),
            },
            Expr::Rational(r) => write!(f, "{r}"),
            Expr::X => write!(f, "x"),
            Expr::D => write!(f, "D"),
            Expr::Param(k) => write!(f, "a{}", k + 1),
        }
    }
}

const ATOM: &[&str] = &["number", "x", "D", "a1..a6", "("];

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&mut self, expected: &[&'static str]) -> Result<T, ParseError> {
        self.skip_ws();
        Err(ParseError::Syntax { offset: self.pos, expected: expected.to_vec() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut items = Vec::new();
        let neg = self.eat(b'-');
        items.push((neg, self.term()?));
        loop {
            if self.eat(b'+') {
                items.push((false, self.term()?));
            } else if self.eat(b'-') {
                items.push((true, self.term()?));
            } else {
                break;
            }
        }
        Ok(match items.len() {
            1 if !items[0].0 => items.pop().unwrap().1,
            _ => Expr::Sum(items),
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.factor()?];
        while self.eat(b'*') {
            items.push(self.factor()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Product(items) })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let Some(n) = self.nat() else {
            return self.fail(&["exponent"]);
        };
        let e = u32::try_from(&n).ok().filter(|&e| e <= MAX_EXPONENT);
        match e {
            Some(e) => Ok(Expr::Power(Box::new(base), e)),
            None => Err(ParseError::ExponentOverflow { offset: start }),
        }
    }

    fn nat(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some(digits.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let num = self.nat().expect("digit present");
                if !self.eat(b'/') {
                    return Ok(Expr::Rational(Rational::from_integer(num)));
                }
                self.skip_ws();
                let at = self.pos;
                let Some(den) = self.nat() else {
                    return self.fail(&["number"]);
                };
                if den.is_zero() {
                    return Err(ParseError::ZeroDenominator { offset: at });
                }
                Ok(Expr::Rational(Rational::new(num, den)))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Expr::X)
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(Expr::D)
            }
            Some(b'a') => {
                match self.src.get(self.pos + 1) {
                    Some(&d @ b'1'..=b'6') => {
                        self.pos += 2;
                        Ok(Expr::Param((d - b'1') as usize))
                    }
                    _ => self.fail(ATOM),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.fail(&[")", "+", "-", "*", "^"]);
                }
                Ok(e)
            }
            _ => self.fail(ATOM),
        }
    }
}

pub fn parse_ast(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail(&["+", "-", "*", "^", "end of input"]);
    }
    Ok(e)
}

#[derive(Debug, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] weylkit::Error),
}

/// Parses and normalizes an operator expression.
pub fn parse_expr(text: &str) -> Result<WeylOp, ExprError> {
    Ok(parse_ast(text)?.to_weyl()?)
}

/// Canonical text form; `parse_expr` reads it back to the same operator.
pub fn format_canonical(op: &WeylOp) -> String {
    op.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use weylkit::catalog::make_p;

    #[test]
    fn ccr() {
        let op = parse_expr("D*x").unwrap();
        assert_eq!(format_canonical(&op), "x*D + 1");
        assert_eq!(format_canonical(&parse_expr("D*x - x*D").unwrap()), "1");
        assert_eq!(format_canonical(&parse_expr("0").unwrap()), "0");
    }

    #[test]
    fn leading_block_of_p() {
        let op = parse_expr("(a1*x^2 + 1)*D^2").unwrap();
        let p = make_p();
        let lead = WeylOp::from_terms(p.terms().filter(|t| t.0 == 2).map(|(i, j, c)| (i, j, c.clone())));
        assert_eq!(op, lead);
        let full = parse_expr("(a1*x^2 + 1)*D^2 + (a2*x + a3)*D + a4*x + a5").unwrap();
        assert_eq!(full, p);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_ast("x + "),
            Err(ParseError::Syntax { offset: 4, expected: ATOM.to_vec() })
        );
        assert_eq!(parse_ast("x ^ 99999999999").unwrap_err(), ParseError::ExponentOverflow { offset: 4 });
        assert_eq!(parse_ast("3/0").unwrap_err(), ParseError::ZeroDenominator { offset: 2 });
        assert_eq!(parse_ast("a7").unwrap_err().offset(), 0);
        assert_eq!(parse_ast("(x").unwrap_err().offset(), 2);
        assert_eq!(parse_ast("x y").unwrap_err().offset(), 2);
        assert_eq!(parse_ast("2x").unwrap_err().offset(), 1);
    }

    #[test]
    fn power_of_product_keeps_parentheses() {
        let e = Expr::Power(Box::new(Expr::Product(vec![Expr::D, Expr::X])), 2);
        assert_eq!(e.to_string(), "(D*x)^2");
        assert_eq!(parse_ast(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn negatives_and_rationals() {
        let op = parse_expr("-3/6*x + (-a1 - 1)*D").unwrap();
        assert_eq!(format_canonical(&op), "(-a1 - 1)*D - 1/2*x");
        let again = parse_expr(&format_canonical(&op)).unwrap();
        assert_eq!(again, op);
    }
}
