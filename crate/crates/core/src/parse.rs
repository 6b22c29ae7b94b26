//! Literal grammar for scalars and maps.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary | unary)*     (juxtaposition multiplies)
//! unary   := ("-" | "+") unary | power
//! power   := primary ("^" ["-"] int)?
//! primary := int | "X" | "x" | "i" | "zeta(" int ")" | "sqrt(" expr ")"
//!          | "root(" expr ("," expr)* ";" int ")" | "(" expr ")"
//! ```
//!
//! `root(c0, ..., cn; k)` is the `k`-th root (in (real, imaginary) order) of
//! the squarefree part of `c0 + c1 x + ... + cn x^n`; scalars whose context is
//! such a root print in this form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{Mobius, Polynomial, RationalFunction};
use crate::numeric::context::cyclotomic_context;
use crate::numeric::{algroots, NumericError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at {position}: expected {expected}")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
}

fn err<T>(position: usize, expected: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, expected: expected.into() })
}

#[derive(Debug, Clone)]
pub enum Expr {
    Int(BigInt),
    Var,
    I,
    Zeta(u64),
    Sqrt(Box<Node>),
    Root(Vec<Node>, usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i64),
}

/// Expression node with its byte offset in the source.
#[derive(Debug, Clone)]
pub struct Node {
    pub pos: usize,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = src.as_bytes();
    let mut out = vec![];
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Int(src[s..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((s, Tok::Ident(src[s..i].to_string())));
        } else if "+-*/^(),;".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return err(i, "a number, name, operator or parenthesis");
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos(), format!("'{}'", c))
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.bump() {
            Tok::Int(n) => Ok(n),
            _ => err(self.toks[self.at.saturating_sub(1)].0, "an integer"),
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            if self.eat('+') {
                let rhs = self.term()?;
                lhs = Node { pos, expr: Expr::Add(Box::new(lhs), Box::new(rhs)) };
            } else if self.eat('-') {
                let rhs = self.term()?;
                lhs = Node { pos, expr: Expr::Sub(Box::new(lhs), Box::new(rhs)) };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            if self.eat('*') {
                let rhs = self.unary()?;
                lhs = Node { pos, expr: Expr::Mul(Box::new(lhs), Box::new(rhs)) };
            } else if self.eat('/') {
                let rhs = self.unary()?;
                lhs = Node { pos, expr: Expr::Div(Box::new(lhs), Box::new(rhs)) };
            } else if self.starts_primary() {
                let rhs = self.power()?;
                lhs = Node { pos, expr: Expr::Mul(Box::new(lhs), Box::new(rhs)) };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        let pos = self.pos();
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Node { pos, expr: Expr::Neg(Box::new(inner)) });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        let pos = self.pos();
        if self.eat('^') {
            let neg = self.eat('-');
            let p = self.pos();
            let e = self.int()?.to_i64().filter(|e| *e <= 1 << 20).ok_or(ParseError { position: p, expected: "a small exponent".into() })?;
            return Ok(Node { pos, expr: Expr::Pow(Box::new(base), if neg { -e } else { e }) });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Node { pos, expr: Expr::Int(n) }),
            Tok::Sym('(') => {
                let mut e = self.expr()?;
                self.expect(')')?;
                e.pos = pos;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "X" | "x" => Ok(Node { pos, expr: Expr::Var }),
                "i" => Ok(Node { pos, expr: Expr::I }),
                "zeta" => {
                    self.expect('(')?;
                    let p = self.pos();
                    let m = self.int()?.to_u64().filter(|m| (1..=1000).contains(m));
                    let m = m.ok_or(ParseError { position: p, expected: "an order between 1 and 1000".into() })?;
                    self.expect(')')?;
                    Ok(Node { pos, expr: Expr::Zeta(m) })
                }
                "sqrt" => {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(Node { pos, expr: Expr::Sqrt(Box::new(e)) })
                }
                "root" => {
                    self.expect('(')?;
                    let mut cs = vec![self.expr()?];
                    while self.eat(',') {
                        cs.push(self.expr()?);
                    }
                    self.expect(';')?;
                    let p = self.pos();
                    let k = self.int()?.to_usize().ok_or(ParseError { position: p, expected: "a root index".into() })?;
                    self.expect(')')?;
                    Ok(Node { pos, expr: Expr::Root(cs, k) })
                }
                _ => err(pos, "X, i, zeta, sqrt or root"),
            },
            _ => err(pos, "a number, X, i, zeta(..), sqrt(..), root(..) or '('"),
        }
    }
}

/// Parse an expression in the literal grammar.
pub fn parse_expr(src: &str) -> Result<Node, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return err(p.pos(), "end of input");
    }
    Ok(e)
}

fn num_err(pos: usize, e: NumericError) -> ParseError {
    ParseError { position: pos, expected: format!("a computable value ({})", e) }
}

fn eval_scalar(n: &Node) -> Result<Scalar, ParseError> {
    let p = n.pos;
    let ne = |e| num_err(p, e);
    Ok(match &n.expr {
        Expr::Int(v) => Scalar::from_bigint(v.clone()),
        Expr::Var => return err(p, "a constant (no X in a scalar)"),
        Expr::I => Scalar::from_int(-1).sqrt().map_err(ne)?,
        Expr::Zeta(m) => match m {
            1 => Scalar::one(),
            2 => Scalar::from_int(-1),
            m => Scalar::generator(&cyclotomic_context(*m)),
        },
        Expr::Sqrt(a) => eval_scalar(a)?.sqrt().map_err(ne)?,
        Expr::Root(cs, k) => {
            let mut coeffs: Vec<BigRational> = vec![];
            for c in cs {
                let v = eval_scalar(c)?;
                coeffs.push(v.as_rational().ok_or(ParseError { position: c.pos, expected: "a rational coefficient".into() })?);
            }
            if coeffs.iter().all(|c| c.is_zero()) {
                return err(p, "a nonzero polynomial");
            }
            algroots::indexed_root(&coeffs, *k).map_err(ne)?
        }
        Expr::Neg(a) => -eval_scalar(a)?,
        Expr::Add(a, b) => eval_scalar(a)?.try_add(&eval_scalar(b)?).map_err(ne)?,
        Expr::Sub(a, b) => eval_scalar(a)?.try_sub(&eval_scalar(b)?).map_err(ne)?,
        Expr::Mul(a, b) => eval_scalar(a)?.try_mul(&eval_scalar(b)?).map_err(ne)?,
        Expr::Div(a, b) => {
            let d = eval_scalar(b)?;
            if d.is_zero() {
                return err(b.pos, "a nonzero divisor");
            }
            eval_scalar(a)?.try_div(&d).map_err(ne)?
        }
        Expr::Pow(a, e) => {
            let v = eval_scalar(a)?;
            if *e < 0 && v.is_zero() {
                return err(p, "a nonzero base for a negative power");
            }
            v.pow(*e).map_err(ne)?
        }
    })
}

fn eval_map(n: &Node) -> Result<RationalFunction, ParseError> {
    let p = n.pos;
    let ne = |e| num_err(p, e);
    Ok(match &n.expr {
        Expr::Var => RationalFunction::identity(),
        Expr::Neg(a) => eval_map(a)?.neg(),
        Expr::Add(a, b) => eval_map(a)?.try_add(&eval_map(b)?).map_err(ne)?,
        Expr::Sub(a, b) => eval_map(a)?.try_sub(&eval_map(b)?).map_err(ne)?,
        Expr::Mul(a, b) => eval_map(a)?.try_mul(&eval_map(b)?).map_err(ne)?,
        Expr::Div(a, b) => {
            let d = eval_map(b)?;
            if d.num().is_zero() {
                return err(b.pos, "a nonzero divisor");
            }
            eval_map(a)?.try_div(&d).map_err(ne)?
        }
        Expr::Pow(a, e) => {
            let v = eval_map(a)?;
            if *e < 0 && v.num().is_zero() {
                return err(p, "a nonzero base for a negative power");
            }
            v.try_pow(*e).map_err(ne)?
        }
        _ => RationalFunction::constant(eval_scalar(n)?),
    })
}

/// Parse an exact scalar literal.
pub fn parse_scalar(src: &str) -> Result<Scalar, ParseError> {
    eval_scalar(&parse_expr(src)?)
}

/// Parse a rational function of `X`.
pub fn parse_ratfun(src: &str) -> Result<RationalFunction, ParseError> {
    eval_map(&parse_expr(src)?)
}

/// Parse a polynomial in `X`.
pub fn parse_poly(src: &str) -> Result<Polynomial, ParseError> {
    let r = parse_ratfun(src)?;
    if !r.is_polynomial() {
        return err(0, "a polynomial");
    }
    Ok(r.num().clone())
}

/// Parse a Möbius map `(aX + b)/(cX + d)`.
pub fn parse_mobius(src: &str) -> Result<Mobius, ParseError> {
    let r = parse_ratfun(src)?;
    mobius_from_ratfun(&r).ok_or(ParseError { position: 0, expected: "an invertible map of degree one".into() })
}

/// The Möbius map of a degree-one rational function.
pub fn mobius_from_ratfun(r: &RationalFunction) -> Option<Mobius> {
    if r.degree() != 1 {
        return None;
    }
    let (n, d) = (r.num(), r.den());
    Mobius::new(n.coeff(1), n.coeff(0), d.coeff(1), d.coeff(0)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        assert!(parse_scalar("3/4").unwrap().eq_exact(&Scalar::frac(3, 4)));
        let v = parse_scalar("sqrt(2)+1").unwrap();
        let w = v.try_sub(&Scalar::one()).unwrap();
        assert!(w.try_mul(&w).unwrap().eq_exact(&Scalar::from_int(2)));
        let i = parse_scalar("zeta(4)").unwrap();
        assert!(i.try_mul(&i).unwrap().eq_exact(&Scalar::from_int(-1)));
        assert!(parse_scalar("-2^2").unwrap().eq_exact(&Scalar::from_int(-4)));
        assert!(parse_scalar("2^-1").unwrap().eq_exact(&Scalar::frac(1, 2)));
        let z = parse_scalar("zeta(3)").unwrap();
        assert_eq!(z.is_root_of_unity(), Some(3));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_scalar("1 + ").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_scalar("2 $ 3").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_scalar("1/(2-2)").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_scalar("X").is_err());
    }

    #[test]
    fn maps() {
        let m = parse_mobius("X/(2X+1)").unwrap();
        assert!(m.eq_exact(&Mobius::from_ints(1, 0, 2, 1).unwrap()));
        let m = parse_mobius("-2*X").unwrap();
        assert!(m.eq_exact(&Mobius::from_ints(-2, 0, 0, 1).unwrap()));
        let c = parse_ratfun("-1/X").unwrap();
        assert_eq!(c.to_string(), "(-1) / (X)");
        assert!(parse_mobius("X^2").is_err());
        let p = parse_poly("X^2 - X - 1").unwrap();
        assert_eq!(p.to_string(), "X^2 - X - 1");
    }

    #[test]
    fn root_literals_round_trip() {
        let r = parse_scalar("root(-1, -1, 0, 1; 2)").unwrap();
        let back = parse_scalar(&r.to_string()).unwrap();
        assert!(back.eq_exact(&r));
    }
}
