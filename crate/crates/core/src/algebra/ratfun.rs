use std::fmt;

use crate::numeric::{NumericError, Scalar};

use super::point::ProjPoint;
use super::poly::Polynomial;

/// `A(X)/B(X)` with `gcd(A, B) = 1` and `B` monic.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, NumericError> {
        if den.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction { num, den: Polynomial::one() });
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.deg0() > 0 { (num.try_divrem(&g)?.0, den.try_divrem(&g)?.0) } else { (num, den) };
        let inv = den.lead().inv()?;
        Ok(RationalFunction { num: num.try_scale(&inv)?, den: den.try_scale(&inv)? })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: Scalar) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn identity() -> Self {
        RationalFunction::from_poly(Polynomial::x())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg0() == 0
    }

    /// Projective evaluation.
    pub fn eval(&self, p: &ProjPoint) -> Result<ProjPoint, NumericError> {
        match p {
            ProjPoint::Infinity => {
                let (da, db) = (self.num.degree(), self.den.deg0());
                match da {
                    None => Ok(ProjPoint::Affine(Scalar::zero())),
                    Some(da) if da > db => Ok(ProjPoint::Infinity),
                    Some(da) if da < db => Ok(ProjPoint::Affine(Scalar::zero())),
                    Some(_) => Ok(ProjPoint::Affine(self.num.lead().try_div(&self.den.lead())?)),
                }
            }
            ProjPoint::Affine(x) => {
                let b = self.den.try_eval(x)?;
                if b.is_zero() {
                    return Ok(ProjPoint::Infinity);
                }
                let a = self.num.try_eval(x)?;
                Ok(ProjPoint::Affine(a.try_div(&b)?))
            }
        }
    }

    /// `self ∘ inner`, reduced.
    pub fn compose(&self, inner: &RationalFunction) -> Result<RationalFunction, NumericError> {
        let n = self.degree();
        let (p, q) = (&inner.num, &inner.den);
        let mut ppow = vec![Polynomial::one()];
        let mut qpow = vec![Polynomial::one()];
        for i in 1..=n {
            ppow.push(ppow[i - 1].try_mul(p)?);
            qpow.push(qpow[i - 1].try_mul(q)?);
        }
        let build = |outer: &Polynomial| -> Result<Polynomial, NumericError> {
            let mut acc = Polynomial::zero();
            for (i, c) in outer.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = ppow[i].try_mul(&qpow[n - i])?.try_scale(c)?;
                acc = acc.try_add(&t)?;
            }
            Ok(acc)
        };
        RationalFunction::new(build(&self.num)?, build(&self.den)?)
    }

    /// `n`-fold self-composition (identity for `n = 0`).
    pub fn iterate(&self, n: usize) -> Result<RationalFunction, NumericError> {
        let mut acc = RationalFunction::identity();
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn try_sub(&self, o: &RationalFunction) -> Result<RationalFunction, NumericError> {
        self.try_add(&o.neg())
    }

    pub fn try_add(&self, o: &RationalFunction) -> Result<RationalFunction, NumericError> {
        let n = self.num.try_mul(&o.den)?.try_add(&o.num.try_mul(&self.den)?)?;
        RationalFunction::new(n, self.den.try_mul(&o.den)?)
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn try_mul(&self, o: &RationalFunction) -> Result<RationalFunction, NumericError> {
        RationalFunction::new(self.num.try_mul(&o.num)?, self.den.try_mul(&o.den)?)
    }

    pub fn try_div(&self, o: &RationalFunction) -> Result<RationalFunction, NumericError> {
        if o.num.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        RationalFunction::new(self.num.try_mul(&o.den)?, self.den.try_mul(&o.num)?)
    }

    /// Integer power; negative exponents invert.
    pub fn try_pow(&self, e: i64) -> Result<RationalFunction, NumericError> {
        let base = if e < 0 { RationalFunction::constant(Scalar::one()).try_div(self)? } else { self.clone() };
        let n = e.unsigned_abs() as usize;
        RationalFunction::new(base.num.try_pow(n)?, base.den.try_pow(n)?)
    }

    /// The constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        (self.num.deg0() == 0 && self.den.deg0() == 0).then(|| self.num.coeff(0))
    }

    pub fn eq_exact(&self, o: &RationalFunction) -> bool {
        self.num.eq_exact(&o.num) && self.den.eq_exact(&o.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(n), Polynomial::from_ints(d)).unwrap()
    }

    #[test]
    fn evaluation() {
        let c = rf(&[-1], &[0, 1]);
        let v = c.eval(&ProjPoint::Affine(Scalar::from_int(-1))).unwrap();
        assert!(v.eq_exact(&ProjPoint::Affine(Scalar::one())));
        let c = rf(&[1, 1], &[1]);
        assert!(c.eval(&ProjPoint::Infinity).unwrap().is_infinity());
        let c = rf(&[1], &[0, 1]);
        let v = c.eval(&ProjPoint::Affine(Scalar::frac(1, 8))).unwrap();
        assert!(v.eq_exact(&ProjPoint::Affine(Scalar::from_int(8))));
        assert!(c.eval(&ProjPoint::Affine(Scalar::zero())).unwrap().is_infinity());
    }

    #[test]
    fn composition() {
        let sq = rf(&[0, 0, 1], &[1]);
        let sh = rf(&[1, 1], &[1]);
        assert!(sq.compose(&sh).unwrap().eq_exact(&rf(&[1, 2, 1], &[1])));
        let inv = rf(&[1], &[0, 1]);
        assert!(inv.compose(&inv).unwrap().eq_exact(&RationalFunction::identity()));
        let aff = rf(&[1, 2], &[1]);
        assert!(aff.compose(&aff).unwrap().eq_exact(&rf(&[3, 4], &[1])));
    }

    #[test]
    fn reduces_common_factors() {
        let r = rf(&[-1, 0, 1], &[-1, 1]);
        assert!(r.eq_exact(&rf(&[1, 1], &[1])));
        let r = rf(&[2], &[4, 2]);
        assert!(r.eq_exact(&rf(&[1], &[2, 1])));
    }
}
