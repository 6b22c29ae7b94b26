use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{is_compound, Polynomial, RationalFunction};
use crate::config;
use crate::numeric::Scalar;

use super::PuiseuxError;

/// Truncated Puiseux series in `Z`: exact coefficients at rational
/// exponents, known below `order` (`None` means the series is exact).
#[derive(Clone, Debug)]
pub struct Series {
    terms: BTreeMap<BigRational, Scalar>,
    order: Option<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn min_order(a: Option<BigRational>, b: Option<BigRational>) -> Option<BigRational> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(a.min(b)),
    }
}

/// Default number of exponent units kept past the leading term when an
/// exact series is inverted or square-rooted.
pub fn default_relative_order() -> BigRational {
    rat(config::DEFAULT_SERIES_ORDER)
}

impl Series {
    pub fn zero() -> Self {
        Series { terms: BTreeMap::new(), order: None }
    }

    pub fn constant(c: Scalar) -> Self {
        Series::monomial(c, BigRational::zero())
    }

    pub fn one() -> Self {
        Series::constant(Scalar::one())
    }

    /// `c Z^e`
    pub fn monomial(c: Scalar, e: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Series { terms, order: None }
    }

    /// `Z`
    pub fn z() -> Self {
        Series::monomial(Scalar::one(), BigRational::one())
    }

    /// `O(Z^order)`
    pub fn big_o(order: BigRational) -> Self {
        Series { terms: BTreeMap::new(), order: Some(order) }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, Scalar)>, order: Option<BigRational>) -> Self {
        let mut s = Series { terms: BTreeMap::new(), order };
        for (e, c) in terms {
            let slot = s.terms.entry(e).or_insert_with(Scalar::zero);
            *slot = &*slot + &c;
        }
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(o) = &self.order {
            let o = o.clone();
            self.terms.retain(|e, _| *e < o);
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn order(&self) -> Option<&BigRational> {
        self.order.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &BigRational) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// No nonzero coefficient below the truncation order.
    pub fn is_zero_to_order(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least common denominator of the stored exponents and the order.
    pub fn ramification(&self) -> u64 {
        let mut l = BigInt::one();
        for e in self.terms.keys().chain(self.order.iter()) {
            l = l.lcm(e.denom());
        }
        l.to_u64().unwrap_or(u64::MAX)
    }

    /// Valuation: the least exponent with a nonzero coefficient.
    pub fn val(&self) -> Result<BigRational, PuiseuxError> {
        self.terms.keys().next().cloned().ok_or(PuiseuxError::ZeroToStoredOrder)
    }

    /// Leading exponent and coefficient.
    pub fn lead(&self) -> Result<(BigRational, Scalar), PuiseuxError> {
        self.terms.iter().next().map(|(e, c)| (e.clone(), c.clone())).ok_or(PuiseuxError::ZeroLeadingTerm)
    }

    /// Valuation used in order bookkeeping; for a series with no known
    /// terms this is its truncation order.
    fn val_or_order(&self) -> Option<BigRational> {
        self.terms.keys().next().cloned().or_else(|| self.order.clone())
    }

    /// Number of exponent units known past the leading term.
    pub fn relative_order(&self) -> Option<BigRational> {
        match (&self.order, self.terms.keys().next()) {
            (Some(o), Some(v)) => Some(o - v),
            _ => None,
        }
    }

    pub fn truncate(&self, order: BigRational) -> Series {
        let mut s = self.clone();
        s.order = min_order(s.order, Some(order));
        s.normalize();
        s
    }

    pub fn neg(&self) -> Series {
        Series { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(), order: self.order.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Series, PuiseuxError> {
        let mut terms = BTreeMap::new();
        for (e, x) in &self.terms {
            terms.insert(e.clone(), x.try_mul(c)?);
        }
        let mut s = Series { terms, order: self.order.clone() };
        s.normalize();
        Ok(s)
    }

    pub fn add(&self, o: &Series) -> Result<Series, PuiseuxError> {
        let order = min_order(self.order.clone(), o.order.clone());
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let v = match terms.get(e) {
                Some(x) => x.try_add(c)?,
                None => c.clone(),
            };
            terms.insert(e.clone(), v);
        }
        let mut s = Series { terms, order };
        s.normalize();
        Ok(s)
    }

    pub fn sub(&self, o: &Series) -> Result<Series, PuiseuxError> {
        self.add(&o.neg())
    }

    /// Product with `trunc = min(val(a) + trunc(b), val(b) + trunc(a))`.
    pub fn mul(&self, o: &Series) -> Result<Series, PuiseuxError> {
        let order = match (self.val_or_order(), o.val_or_order()) {
            (Some(va), Some(vb)) => min_order(self.order.as_ref().map(|t| t + &vb), o.order.as_ref().map(|t| t + &va)),
            // an exact zero factor
            _ => None,
        };
        let mut terms: BTreeMap<BigRational, Scalar> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea + eb;
                if order.as_ref().is_some_and(|t| e >= *t) {
                    continue;
                }
                let p = ca.try_mul(cb)?;
                let v = match terms.get(&e) {
                    Some(x) => x.try_add(&p)?,
                    None => p,
                };
                terms.insert(e, v);
            }
        }
        let mut s = Series { terms, order };
        s.normalize();
        Ok(s)
    }

    pub fn pow(&self, n: u32) -> Result<Series, PuiseuxError> {
        let mut acc = Series::one();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exponents `e ↦ factor·e`, i.e. substitution `Z ↦ Z^factor`.
    pub fn reindex(&self, factor: &BigRational) -> Series {
        assert!(factor.is_positive());
        Series { terms: self.terms.iter().map(|(e, c)| (e * factor, c.clone())).collect(), order: self.order.as_ref().map(|o| o * factor) }
    }

    /// Coefficients at `v + j/e` for `j < n`, with `(v, lead)` the leading term.
    fn dense(&self, rel: &BigRational) -> Result<(BigRational, u64, Vec<Scalar>), PuiseuxError> {
        let (v, _) = self.lead()?;
        let rel = match self.relative_order() {
            Some(r) => r.min(rel.clone()),
            None => rel.clone(),
        };
        let e = self.ramification();
        let n = (&rel * BigRational::from_integer(e.into())).ceil().to_integer().to_u64().unwrap_or(0).max(1);
        let step = BigRational::new(BigInt::one(), e.into());
        let mut out = Vec::with_capacity(n as usize);
        for j in 0..n {
            out.push(self.coeff(&(&v + &step * BigRational::from_integer(j.into()))));
        }
        Ok((v, e, out))
    }

    /// Multiplicative inverse, keeping `rel` exponent units past the leading
    /// term (or fewer if the input is known to less).
    pub fn inv_rel(&self, rel: &BigRational) -> Result<Series, PuiseuxError> {
        let (v, e, a) = self.dense(rel)?;
        let n = a.len();
        let a0inv = a[0].inv()?;
        let mut b = vec![a0inv.clone()];
        for j in 1..n {
            let mut s = Scalar::zero();
            for i in 1..=j {
                if !a[i].is_zero() && !b[j - i].is_zero() {
                    s = s.try_add(&a[i].try_mul(&b[j - i])?)?;
                }
            }
            b.push((-&s).try_mul(&a0inv)?);
        }
        let step = BigRational::new(BigInt::one(), e.into());
        let base = -v;
        let order = &base + &step * BigRational::from_integer(n.into());
        Ok(Series::from_terms(b.into_iter().enumerate().map(|(j, c)| (&base + &step * BigRational::from_integer(j.into()), c)), Some(order)))
    }

    pub fn inv(&self) -> Result<Series, PuiseuxError> {
        self.inv_rel(&default_relative_order())
    }

    pub fn div(&self, o: &Series) -> Result<Series, PuiseuxError> {
        self.mul(&o.inv()?)
    }

    /// Square root on the principal branch of the leading coefficient.
    pub fn sqrt_rel(&self, rel: &BigRational) -> Result<Series, PuiseuxError> {
        let (v, e, a) = self.dense(rel)?;
        let n = a.len();
        let r0 = a[0].sqrt()?;
        let two_r0_inv = r0.scale(&rat(2)).inv()?;
        let mut r = vec![r0];
        for j in 1..n {
            let mut s = Scalar::zero();
            for i in 1..j {
                if !r[i].is_zero() && !r[j - i].is_zero() {
                    s = s.try_add(&r[i].try_mul(&r[j - i])?)?;
                }
            }
            r.push(a[j].try_sub(&s)?.try_mul(&two_r0_inv)?);
        }
        let step = BigRational::new(BigInt::one(), e.into());
        let base = v / rat(2);
        let order = &base + &step * BigRational::from_integer(n.into());
        Ok(Series::from_terms(r.into_iter().enumerate().map(|(j, c)| (&base + &step * BigRational::from_integer(j.into()), c)), Some(order)))
    }

    pub fn sqrt(&self) -> Result<Series, PuiseuxError> {
        self.sqrt_rel(&default_relative_order())
    }

    /// Horner evaluation of a polynomial at this series.
    pub fn eval_poly(&self, p: &Polynomial) -> Result<Series, PuiseuxError> {
        let mut acc = Series::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&Series::constant(c.clone()))?;
        }
        Ok(acc)
    }

    /// `r(self)` for a rational function `r`.
    pub fn eval_ratfun(&self, r: &RationalFunction) -> Result<Series, PuiseuxError> {
        let num = self.eval_poly(r.num())?;
        let den = self.eval_poly(r.den())?;
        if den.is_zero_to_order() {
            return Err(PuiseuxError::ZeroToStoredOrder);
        }
        let rel = match (num.relative_order(), den.relative_order()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => default_relative_order(),
        };
        num.mul(&den.inv_rel(&rel)?)
    }

    /// Exact equality of stored terms and order.
    pub fn eq_exact(&self, o: &Series) -> bool {
        self.order == o.order
            && self.terms.len() == o.terms.len()
            && self.terms.iter().zip(&o.terms).all(|((e1, c1), (e2, c2))| e1 == e2 && c1.eq_exact(c2))
    }
}

fn exponent_text(e: &BigRational) -> String {
    if e.is_integer() && !e.is_negative() {
        e.to_string()
    } else {
        format!("({})", e)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // (negative, unsigned text)
        let mut parts: Vec<(bool, String)> = vec![];
        for (e, c) in &self.terms {
            let lit = c.to_string();
            let (neg, body) = match lit.strip_prefix('-') {
                Some(rest) if !is_compound(&lit) => (true, rest.to_string()),
                _ => (false, lit.clone()),
            };
            let mon = if e.is_one() { "Z".to_string() } else { format!("Z^{}", exponent_text(e)) };
            let text = if e.is_zero() {
                if is_compound(&body) && !parts.is_empty() {
                    format!("({})", body)
                } else {
                    body
                }
            } else if body == "1" {
                mon
            } else if is_compound(&body) {
                format!("({})*{}", body, mon)
            } else {
                format!("{}*{}", body, mon)
            };
            parts.push((neg, text));
        }
        if let Some(o) = &self.order {
            parts.push((false, format!("O(Z^{})", exponent_text(o))));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, text)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{}", text)?,
                (0, false) => write!(f, "{}", text)?,
                (_, true) => write!(f, " - {}", text)?,
                (_, false) => write!(f, " + {}", text)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(cs: &[(i64, i64, i64)]) -> Series {
        // (coef, exponent numerator, exponent denominator)
        Series::from_terms(cs.iter().map(|&(c, n, d)| (q(n, d), Scalar::from_int(c))), None)
    }

    #[test]
    fn arithmetic() {
        let s = poly(&[(1, 1, 1), (1, 2, 1)]).add(&poly(&[(-1, 1, 1)])).unwrap();
        assert!(s.eq_exact(&poly(&[(1, 2, 1)])));
        let s = poly(&[(1, 1, 2)]).mul(&poly(&[(1, 1, 3)])).unwrap();
        assert_eq!(s.val().unwrap(), q(5, 6));
        assert_eq!(s.ramification(), 6);
    }

    #[test]
    fn valuations() {
        assert_eq!(poly(&[(1, 3, 1), (-2, 5, 1)]).val().unwrap(), q(3, 1));
        assert_eq!(poly(&[(1, -1, 1), (1, 0, 1)]).val().unwrap(), q(-1, 1));
        assert_eq!(poly(&[(1, 1, 2), (-1, 1, 1)]).val().unwrap(), q(1, 2));
        assert!(Series::zero().val().is_err());
    }

    #[test]
    fn inversion() {
        let g = poly(&[(1, 0, 1), (-1, 1, 1)]).inv().unwrap();
        for j in 0..8 {
            assert!(g.coeff(&q(j, 1)).is_one());
        }
        let s = poly(&[(2, 2, 1), (1, 3, 1)]);
        let t = s.inv().unwrap();
        assert!(t.coeff(&q(-2, 1)).eq_exact(&Scalar::frac(1, 2)));
        assert!(t.coeff(&q(-1, 1)).eq_exact(&Scalar::frac(-1, 4)));
        let one = s.mul(&t).unwrap();
        assert!(one.sub(&Series::one()).unwrap().is_zero_to_order());
        assert_eq!(one.order().unwrap(), &q(8, 1));
        let (e, c) = one.lead().unwrap();
        assert!(e.is_zero() && c.is_one());
    }

    #[test]
    fn square_roots() {
        let s = poly(&[(1, 2, 1), (1, 3, 1)]);
        let r = s.sqrt().unwrap();
        assert!(r.coeff(&q(1, 1)).is_one());
        assert!(r.coeff(&q(2, 1)).eq_exact(&Scalar::frac(1, 2)));
        assert!(r.coeff(&q(3, 1)).eq_exact(&Scalar::frac(-1, 8)));
        assert!(r.mul(&r).unwrap().sub(&s).unwrap().is_zero_to_order());
        let r = poly(&[(1, 0, 1), (-2, 1, 1)]).sqrt().unwrap();
        assert!(r.coeff(&q(1, 1)).eq_exact(&Scalar::from_int(-1)));
        assert!(r.coeff(&q(2, 1)).eq_exact(&Scalar::frac(-1, 2)));
        // odd leading exponent
        let r = poly(&[(1, 1, 1)]).sqrt().unwrap();
        assert_eq!(r.val().unwrap(), q(1, 2));
    }

    #[test]
    fn rational_function_values() {
        let inv_x = RationalFunction::new(Polynomial::from_ints(&[1]), Polynomial::from_ints(&[0, 1])).unwrap();
        let s = Series::z().eval_ratfun(&inv_x).unwrap();
        assert_eq!(s.val().unwrap(), q(-1, 1));
        let c = RationalFunction::new(Polynomial::from_ints(&[1, 1]), Polynomial::from_ints(&[-1, 1])).unwrap();
        let s = poly(&[(2, 0, 1), (1, 1, 1)]).eval_ratfun(&c).unwrap();
        assert!(s.coeff(&q(0, 1)).eq_exact(&Scalar::from_int(3)));
    }

    #[test]
    fn display() {
        let s = poly(&[(1, -1, 1), (3, 5, 2)]).truncate(q(4, 1));
        assert_eq!(s.to_string(), "Z^(-1) + 3*Z^(5/2) + O(Z^4)");
        assert_eq!(poly(&[(-2, 0, 1), (-1, 1, 1), (-5, 2, 1)]).to_string(), "-2 - Z - 5*Z^2");
    }
}
