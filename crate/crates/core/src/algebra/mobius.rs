use std::fmt;

use crate::numeric::qpoly::q;
use crate::numeric::{CBall, NumericError, Scalar};

use super::point::{sort_dedup, ProjPoint};
use super::poly::{is_compound, Polynomial};
use super::ratfun::RationalFunction;
use super::AlgebraError;

/// `X ↦ (aX + b)/(cX + d)` with `ad − bc ≠ 0`, scaled so that the first
/// nonzero entry of `(a, b, c, d)` is 1.
#[derive(Clone, Debug)]
pub struct Mobius {
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
}

/// Fixed points of a non-identity Möbius map.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub points: Vec<ProjPoint>,
    /// A single fixed point of multiplicity two.
    pub parabolic: bool,
}

impl Mobius {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self, AlgebraError> {
        let det = a.try_mul(&d)?.try_sub(&b.try_mul(&c)?)?;
        if det.is_zero() {
            return Err(AlgebraError::Singular);
        }
        Ok(Mobius::canonical(a, b, c, d)?)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self, AlgebraError> {
        Mobius::new(Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c), Scalar::from_int(d))
    }

    fn canonical(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self, NumericError> {
        let lead = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).cloned().ok_or(NumericError::DivisionByZero)?;
        if lead.is_one() {
            return Ok(Mobius { a, b, c, d });
        }
        let inv = lead.inv()?;
        Ok(Mobius { a: a.try_mul(&inv)?, b: b.try_mul(&inv)?, c: c.try_mul(&inv)?, d: d.try_mul(&inv)? })
    }

    pub fn identity() -> Self {
        Mobius { a: Scalar::one(), b: Scalar::zero(), c: Scalar::zero(), d: Scalar::one() }
    }

    /// `αX + β`
    pub fn affine(alpha: Scalar, beta: Scalar) -> Result<Self, AlgebraError> {
        Mobius::new(alpha, beta, Scalar::zero(), Scalar::one())
    }

    /// `X/(γX + δ)`
    pub fn inverse_affine(gamma: Scalar, delta: Scalar) -> Result<Self, AlgebraError> {
        Mobius::new(Scalar::one(), Scalar::zero(), gamma, delta)
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }
    pub fn b(&self) -> &Scalar {
        &self.b
    }
    pub fn c(&self) -> &Scalar {
        &self.c
    }
    pub fn d(&self) -> &Scalar {
        &self.d
    }

    pub fn det(&self) -> Scalar {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_affine(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.eq_exact(&Mobius::identity())
    }

    /// `self ∘ o` (matrix product).
    pub fn compose(&self, o: &Mobius) -> Result<Mobius, NumericError> {
        let a = self.a.try_mul(&o.a)?.try_add(&self.b.try_mul(&o.c)?)?;
        let b = self.a.try_mul(&o.b)?.try_add(&self.b.try_mul(&o.d)?)?;
        let c = self.c.try_mul(&o.a)?.try_add(&self.d.try_mul(&o.c)?)?;
        let d = self.c.try_mul(&o.b)?.try_add(&self.d.try_mul(&o.d)?)?;
        Mobius::canonical(a, b, c, d)
    }

    /// `self^n` by binary powering.
    pub fn iterate(&self, n: u64) -> Result<Mobius, NumericError> {
        let mut acc = Mobius::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Result<Mobius, NumericError> {
        Mobius::canonical(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    /// `h ∘ self ∘ h⁻¹`
    pub fn conjugate(&self, h: &Mobius) -> Result<Mobius, NumericError> {
        h.compose(self)?.compose(&h.inverse()?)
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint, NumericError> {
        match p {
            ProjPoint::Infinity => {
                if self.c.is_zero() {
                    Ok(ProjPoint::Infinity)
                } else {
                    Ok(ProjPoint::Affine(self.a.try_div(&self.c)?))
                }
            }
            ProjPoint::Affine(x) => {
                let den = self.c.try_mul(x)?.try_add(&self.d)?;
                if den.is_zero() {
                    return Ok(ProjPoint::Infinity);
                }
                let num = self.a.try_mul(x)?.try_add(&self.b)?;
                Ok(ProjPoint::Affine(num.try_div(&den)?))
            }
        }
    }

    pub fn to_ratfun(&self) -> RationalFunction {
        RationalFunction::new(Polynomial::linear(self.a.clone(), self.b.clone()), Polynomial::linear(self.c.clone(), self.d.clone()))
            .expect("invertible map")
    }

    /// Solutions of `cX² + (d − a)X − b = 0` in P¹.
    pub fn fixed_points(&self) -> Result<FixedPoints, AlgebraError> {
        if self.is_identity() {
            return Err(AlgebraError::IdentityInput);
        }
        let dma = self.d.try_sub(&self.a)?;
        if self.c.is_zero() {
            if dma.is_zero() {
                return Ok(FixedPoints { points: vec![ProjPoint::Infinity], parabolic: true });
            }
            let p = self.b.try_div(&dma)?;
            return Ok(FixedPoints { points: vec![ProjPoint::Infinity, ProjPoint::Affine(p)], parabolic: false });
        }
        let disc = dma.try_mul(&dma)?.try_add(&self.b.try_mul(&self.c)?.scale(&q(4)))?;
        let two_c = self.c.scale(&q(2));
        let amd = -&dma;
        if disc.is_zero() {
            let p = amd.try_div(&two_c)?;
            return Ok(FixedPoints { points: vec![ProjPoint::Affine(p)], parabolic: true });
        }
        let r = disc.sqrt()?;
        let p1 = amd.try_add(&r)?.try_div(&two_c)?;
        let p2 = amd.try_sub(&r)?.try_div(&two_c)?;
        let mut pts = vec![ProjPoint::Affine(p1), ProjPoint::Affine(p2)];
        sort_dedup(&mut pts);
        Ok(FixedPoints { points: pts, parabolic: false })
    }

    pub fn eq_exact(&self, o: &Mobius) -> bool {
        self.a.eq_exact(&o.a) && self.b.eq_exact(&o.b) && self.c.eq_exact(&o.c) && self.d.eq_exact(&o.d)
    }

    /// Balls of the four entries, for cheap separation of distinct maps.
    pub fn balls(&self, prec: u64) -> [CBall; 4] {
        [self.a.ball(prec), self.b.ball(prec), self.c.ball(prec), self.d.ball(prec)]
    }

    /// Are the entry balls compatible with equality?
    pub fn may_equal(&self, o: &Mobius, prec: u64) -> bool {
        self.balls(prec).iter().zip(o.balls(prec).iter()).all(|(x, y)| x.overlaps(y))
    }
}

fn linear_text(a: &Scalar, b: &Scalar) -> String {
    Polynomial::linear(a.clone(), b.clone()).to_string()
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_zero() {
            // affine: (a/d) X + b/d
            let inv = self.d.inv().expect("invertible map");
            let a = &self.a * &inv;
            let b = &self.b * &inv;
            return write!(f, "{}", linear_text(&a, &b));
        }
        let num = linear_text(&self.a, &self.b);
        let den = linear_text(&self.c, &self.d);
        let num = if is_compound(&num) || num.contains(' ') { format!("({})", num) } else { num };
        write!(f, "{}/({})", num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mobius {
        Mobius::from_ints(a, b, c, d).unwrap()
    }

    #[test]
    fn composition_matrix() {
        let f = m(1, 2, 0, 1);
        let g = m(1, 0, 2, 1);
        assert!(f.compose(&g).unwrap().eq_exact(&m(5, 2, 2, 1)));
        assert!(f.compose(&f.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn iteration() {
        let f = m(2, 1, 0, 1);
        assert!(f.iterate(3).unwrap().eq_exact(&m(8, 7, 0, 1)));
        assert!(f.iterate(0).unwrap().is_identity());
    }

    #[test]
    fn fixed_points() {
        let fp = m(2, 1, 0, 1).fixed_points().unwrap();
        assert_eq!(fp.points.len(), 2);
        assert!(fp.points[0].is_infinity());
        assert!(fp.points[1].eq_exact(&ProjPoint::Affine(Scalar::from_int(-1))));
        let fp = m(1, 1, 0, 1).fixed_points().unwrap();
        assert!(fp.parabolic && fp.points[0].is_infinity());
        let fp = m(1, 0, 1, 1).fixed_points().unwrap();
        assert!(fp.parabolic && fp.points[0].eq_exact(&ProjPoint::Affine(Scalar::zero())));
    }

    #[test]
    fn conjugation() {
        let f = m(2, -1, 0, 1);
        let h = m(1, -1, 0, 1);
        assert!(f.conjugate(&h).unwrap().eq_exact(&m(2, 0, 0, 1)));
    }

    #[test]
    fn display() {
        assert_eq!(m(6, 0, 0, 1).to_string(), "6*X");
        assert_eq!(m(1, 0, 2, 1).to_string(), "X/(2*X + 1)");
        assert_eq!(m(1, 2, 0, 1).to_string(), "X + 2");
        assert_eq!(m(1, 1, 1, 2).to_string(), "(X + 1)/(X + 2)");
    }
}
