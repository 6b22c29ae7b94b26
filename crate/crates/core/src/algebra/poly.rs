use std::fmt;

use num_rational::BigRational;

use crate::numeric::algroots;
use crate::numeric::qpoly::{q, QPoly};
use crate::numeric::{NumericError, Scalar};

/// Polynomial over exact scalars, lowest degree first, no trailing zeros.
#[derive(Clone, Debug)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::new(vec![c])
    }

    /// `X`
    pub fn x() -> Self {
        Polynomial::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// `a X + b`
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        Polynomial::new(vec![b, a])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Polynomial::new(c.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    pub fn from_qpoly(p: &[BigRational]) -> Self {
        Polynomial::new(p.iter().map(|c| Scalar::from_rational(c.clone())).collect())
    }

    /// Rational coefficients, if all coefficients are rational.
    pub fn to_qpoly(&self) -> Option<QPoly> {
        self.coeffs.iter().map(|c| c.as_rational()).collect()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with `deg 0 = 0`.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn try_add(&self, o: &Polynomial) -> Result<Polynomial, NumericError> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).try_add(&o.coeff(i))?);
        }
        Ok(Polynomial::new(out))
    }

    pub fn try_sub(&self, o: &Polynomial) -> Result<Polynomial, NumericError> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn try_scale(&self, c: &Scalar) -> Result<Polynomial, NumericError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x.try_mul(c)?);
        }
        Ok(Polynomial::new(out))
    }

    pub fn try_mul(&self, o: &Polynomial) -> Result<Polynomial, NumericError> {
        if self.is_zero() || o.is_zero() {
            return Ok(Polynomial::zero());
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Ok(Polynomial::new(out))
    }

    pub fn try_pow(&self, n: usize) -> Result<Polynomial, NumericError> {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Scalar::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs: c }
    }

    pub fn try_divrem(&self, b: &Polynomial) -> Result<(Polynomial, Polynomial), NumericError> {
        let db = b.degree().ok_or(NumericError::DivisionByZero)?;
        let inv = b.lead().inv()?;
        let mut r = self.clone();
        let mut quo = vec![Scalar::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.lead().try_mul(&inv)?;
            let shift = dr - db;
            let mut nc = r.coeffs.clone();
            for (i, bc) in b.coeffs.iter().enumerate() {
                nc[i + shift] = nc[i + shift].try_sub(&c.try_mul(bc)?)?;
            }
            nc.pop();
            quo[shift] = c;
            r = Polynomial::new(nc);
        }
        Ok((Polynomial::new(quo), r))
    }

    pub fn try_monic(&self) -> Result<Polynomial, NumericError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.lead().inv()?;
        self.try_scale(&inv)
    }

    /// Monic gcd by the Euclidean algorithm over the exact field.
    pub fn gcd(&self, o: &Polynomial) -> Result<Polynomial, NumericError> {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.try_divrem(&b)?.1.try_monic()?;
            a = b;
            b = r;
        }
        a.try_monic()
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(&BigRational::from_integer((i as i64).into()))).collect())
    }

    pub fn try_eval(&self, x: &Scalar) -> Result<Scalar, NumericError> {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(x)?.try_add(c)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.try_eval(x).expect("context merge overflow")
    }

    /// `self(inner)`
    pub fn try_compose(&self, inner: &Polynomial) -> Result<Polynomial, NumericError> {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(inner)?.try_add(&Polynomial::constant(c.clone()))?;
        }
        Ok(acc)
    }

    /// Distinct roots. Rational coefficients are handled in every degree,
    /// algebraic ones up to degree 2.
    pub fn roots(&self) -> Result<Vec<Scalar>, NumericError> {
        if let Some(q) = self.to_qpoly() {
            return algroots::roots_of(&q);
        }
        match self.degree() {
            None => Err(NumericError::ZeroPolynomial),
            Some(0) => Ok(vec![]),
            Some(1) => Ok(vec![(-&self.coeffs[0]).try_div(&self.coeffs[1])?]),
            Some(2) => {
                let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
                let disc = b.try_mul(b)?.try_sub(&a.try_mul(c)?.scale(&q(4)))?;
                let two_a = a.scale(&q(2));
                if disc.is_zero() {
                    return Ok(vec![(-b).try_div(&two_a)?]);
                }
                let r = disc.sqrt()?;
                Ok(vec![(-b).try_add(&r)?.try_div(&two_a)?, (-b).try_sub(&r)?.try_div(&two_a)?])
            }
            Some(d) => Err(NumericError::Undecided(format!("roots of a degree {} polynomial over an extension field", d))),
        }
    }

    /// Exact equality.
    pub fn eq_exact(&self, o: &Polynomial) -> bool {
        self.coeffs.len() == o.coeffs.len() && self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a.eq_exact(b))
    }

    /// Text in the variable `var`, highest degree first.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let lit = c.to_string();
            let compound = is_compound(&lit);
            let (neg, body) = match (compound, lit.strip_prefix('-')) {
                (false, Some(rest)) => (true, rest.to_string()),
                _ => (false, lit.clone()),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = if compound && i > 0 { format!("({})", body) } else { body };
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            if i == 0 {
                if compound && !out.is_empty() {
                    out.push_str(&format!("({})", body));
                } else {
                    out.push_str(&body);
                }
            } else if body == "1" {
                out.push_str(&mon);
            } else {
                out.push_str(&format!("{}*{}", body, mon));
            }
        }
        out
    }
}

/// A literal needs parentheses as a factor if it has a top-level `+`/`-`
/// (other than a leading sign) or a `/` after which more follows.
pub fn is_compound(lit: &str) -> bool {
    let bytes = lit.as_bytes();
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 => return true,
            b'*' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("X"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        let a = Polynomial::from_ints(&[-1, 0, 1]);
        let b = Polynomial::from_ints(&[-1, 1]);
        assert!(a.gcd(&b).unwrap().eq_exact(&b));
        let one = Polynomial::from_ints(&[0, 1]).gcd(&Polynomial::from_ints(&[1, 1])).unwrap();
        assert!(one.eq_exact(&Polynomial::one()));
        let c = Polynomial::from_ints(&[1, 2, 1]).gcd(&a).unwrap();
        assert!(c.eq_exact(&Polynomial::from_ints(&[1, 1])));
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_ints(&[1, -2, 3]).to_string(), "3*X^2 - 2*X + 1");
        assert_eq!(Polynomial::from_ints(&[0, 1]).to_string(), "X");
        let s = Scalar::from_int(2).sqrt().unwrap() + Scalar::one();
        let p = Polynomial::new(vec![s.clone(), s]);
        assert_eq!(p.to_string(), "(1 + sqrt(2))*X + (1 + sqrt(2))");
    }
}
