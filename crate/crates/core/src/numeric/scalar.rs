//! Exact scalars: elements of a field context, written as polynomials in its generator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::context::{self, Ctx};
use super::dyadic::{split_square, CBall};
use super::error::NumericError;
use super::linalg::Echelon;
use super::qpoly::{self, q, QPoly};
use super::roots;
use crate::config;

#[derive(Clone)]
pub struct Scalar {
    ctx: Ctx,
    rep: QPoly,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Scalar {
    pub fn from_rational(v: BigRational) -> Self {
        Scalar { ctx: context::rational_context(), rep: qpoly::constant(v) }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::from_rational(q(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(v))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The generator of `ctx`.
    pub fn generator(ctx: &Ctx) -> Self {
        Scalar::from_parts(ctx.clone(), qpoly::from_i64s(&[0, 1]))
    }

    /// Element `rep(θ)` of `ctx`; `rep` is reduced modulo the modulus.
    pub fn from_parts(ctx: Ctx, rep: QPoly) -> Self {
        let rep = if rep.len() <= 1 { qpoly::trim(rep) } else { qpoly::rem(&rep, ctx.modulus()) };
        let (ctx, rep) = context::resolve(&ctx, &rep);
        Scalar { ctx, rep }
    }

    fn live(&self) -> (Ctx, QPoly) {
        if self.ctx.is_rational() {
            return (self.ctx.clone(), self.rep.clone());
        }
        context::resolve(&self.ctx, &self.rep)
    }

    /// Current context (after any splits).
    pub fn context(&self) -> Ctx {
        self.live().0
    }

    /// Representation in the current context, lowest power first.
    pub fn rep(&self) -> QPoly {
        self.live().1
    }

    /// The value if it is a rational number.
    pub fn as_rational(&self) -> Option<BigRational> {
        let (ctx, rep) = self.live();
        if ctx.is_rational() || rep.len() <= 1 {
            Some(rep.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    fn align(a: &Scalar, b: &Scalar) -> Result<(Ctx, QPoly, QPoly), NumericError> {
        let (ca, ra) = a.live();
        let (cb, rb) = b.live();
        if ca.id() == cb.id() {
            return Ok((ca, ra, rb));
        }
        if ra.len() <= 1 {
            return Ok((cb, ra, rb));
        }
        if rb.len() <= 1 {
            return Ok((ca, ra, rb));
        }
        let c = context::merge(&ca, &cb)?;
        let ta = context::transport(&ra, &ca, &c).expect("embedding into merged context");
        let tb = context::transport(&rb, &cb, &c).expect("embedding into merged context");
        let (c1, ta) = context::resolve(&c, &ta);
        let (_, tb) = context::resolve(&c, &tb);
        Ok((c1, ta, tb))
    }

    /// Bring both scalars into one context.
    pub fn common(a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar), NumericError> {
        let (c, ra, rb) = Scalar::align(a, b)?;
        Ok((Scalar::from_parts(c.clone(), ra), Scalar::from_parts(c, rb)))
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, NumericError> {
        let (c, ra, rb) = Scalar::align(self, o)?;
        Ok(Scalar::from_parts(c, qpoly::add(&ra, &rb)))
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar, NumericError> {
        let (c, ra, rb) = Scalar::align(self, o)?;
        Ok(Scalar::from_parts(c, qpoly::sub(&ra, &rb)))
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, NumericError> {
        let (c, ra, rb) = Scalar::align(self, o)?;
        Ok(Scalar::from_parts(c, qpoly::mul(&ra, &rb)))
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, NumericError> {
        let inv = o.inv()?;
        self.try_mul(&inv)
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        let (ctx, rep) = self.live();
        Scalar { ctx, rep: qpoly::scale(&rep, c) }
    }

    /// Exact zero test; splits the context when a zero divisor appears.
    pub fn is_zero(&self) -> bool {
        let (ctx, rep) = self.live();
        if rep.is_empty() {
            return true;
        }
        if rep.len() == 1 || ctx.is_irreducible() {
            return false;
        }
        let g = qpoly::gcd(&rep, ctx.modulus());
        if g.len() <= 1 {
            return false;
        }
        let (_, on_g) = context::split(&ctx, &g);
        on_g
    }

    pub fn is_one(&self) -> bool {
        self.try_sub(&Scalar::one()).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Exact equality.
    pub fn eq_exact(&self, o: &Scalar) -> bool {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return a == b;
        }
        // cheap numeric separation first
        let p = 64;
        if self.ball(p).disjoint(&o.ball(p)) {
            return false;
        }
        self.try_sub(o).expect("context merge overflow").is_zero()
    }

    pub fn inv(&self) -> Result<Scalar, NumericError> {
        loop {
            let (ctx, rep) = self.live();
            if rep.is_empty() {
                return Err(NumericError::DivisionByZero);
            }
            if rep.len() == 1 {
                return Ok(Scalar::from_parts(ctx, vec![rep[0].recip()]));
            }
            let (g, s, _) = qpoly::ext_gcd(&rep, ctx.modulus());
            if g.len() == 1 {
                return Ok(Scalar::from_parts(ctx, s));
            }
            let (_, on_g) = context::split(&ctx, &g);
            if on_g {
                return Err(NumericError::DivisionByZero);
            }
        }
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, NumericError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let (ctx, rep) = base.live();
        let mut n = e.unsigned_abs();
        let m = ctx.modulus().to_vec();
        let red = |p: QPoly| if ctx.is_rational() { p } else { qpoly::rem(&p, &m) };
        let mut acc: QPoly = vec![q(1)];
        let mut b = rep;
        while n > 0 {
            if n & 1 == 1 {
                acc = red(qpoly::mul(&acc, &b));
            }
            n >>= 1;
            if n > 0 {
                b = red(qpoly::mul(&b, &b));
            }
        }
        Ok(Scalar::from_parts(ctx, acc))
    }

    /// Certified enclosure of the tracked embedding with about `prec` bits.
    pub fn ball(&self, prec: u64) -> CBall {
        let (ctx, rep) = self.live();
        if rep.len() <= 1 {
            let v = rep.first().cloned().unwrap_or_else(BigRational::zero);
            return CBall::from_rational(&v, prec + 8);
        }
        let extra = 16 + qpoly::coeff_bits(&rep) + 2 * rep.len() as u64;
        let mut w = prec + extra;
        loop {
            let z = ctx.generator_ball(w);
            let v = qpoly::eval_ball(&rep, &z, w + 8);
            let mag = v.re.log2_abs().max(v.im.log2_abs()).max(0.0);
            if v.rad.is_zero() || v.rad.log2_abs() <= mag - prec as f64 {
                return v;
            }
            w *= 2;
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        self.ball(64).to_c64()
    }

    /// Minimal polynomial of the scalar over ℚ inside its (possibly reducible)
    /// context; squarefree and monic. Equals the true minimal polynomial when
    /// the context is irreducible.
    pub fn minpoly(&self) -> QPoly {
        let (ctx, rep) = self.live();
        if rep.len() <= 1 {
            let v = rep.first().cloned().unwrap_or_else(BigRational::zero);
            return vec![-v, q(1)];
        }
        let d = ctx.degree();
        let m = ctx.modulus().to_vec();
        let mut ech = Echelon::new(d);
        let mut cur: QPoly = vec![q(1)];
        let flat = |p: &QPoly| -> Vec<BigRational> { (0..d).map(|i| p.get(i).cloned().unwrap_or_else(BigRational::zero)).collect() };
        loop {
            if let Some(dep) = ech.insert(flat(&cur)) {
                let mut out: QPoly = dep.iter().map(|c| -c).collect();
                out.push(q(1));
                return out;
            }
            cur = qpoly::rem(&qpoly::mul(&cur, &rep), &m);
        }
    }

    /// Exact realness of the embedded value.
    pub fn is_real(&self) -> bool {
        let (ctx, rep) = self.live();
        if rep.len() <= 1 || ctx.is_real() {
            return true;
        }
        let p = self.minpoly();
        let mut prec = config::start_precision();
        loop {
            if let Ok(disks) = roots::isolate(&p, prec) {
                let me = self.ball(prec);
                let hits: Vec<usize> = disks.iter().enumerate().filter(|(_, d)| d.overlaps(&me)).map(|(i, _)| i).collect();
                if hits.len() == 1 {
                    let d = &disks[hits[0]];
                    let c = d.conj();
                    if c.disjoint(d) {
                        return false;
                    }
                    if disks.iter().enumerate().all(|(j, e)| j == hits[0] || c.disjoint(e)) {
                        return true;
                    }
                }
            }
            prec *= 2;
            assert!(prec <= roots::MAX_PREC * 2, "realness undecided");
        }
    }

    /// Sign of a real scalar; `None` if the scalar is not real.
    pub fn real_sign(&self) -> Option<Sign> {
        if let Some(r) = self.as_rational() {
            return Some(r.numer().sign());
        }
        if !self.is_real() {
            return None;
        }
        if self.is_zero() {
            return Some(Sign::NoSign);
        }
        let mut prec = 64;
        loop {
            let b = self.ball(prec);
            if let Some(s) = b.re_sign() {
                if s != Sign::NoSign {
                    return Some(s);
                }
            }
            prec *= 2;
        }
    }

    /// Sign of the real part, decided exactly when possible. Falls back to the
    /// midpoint sign once `cap` bits are reached (only for values whose real
    /// part is not certified zero and not separated).
    pub fn re_sign(&self) -> Sign {
        if let Some(s) = self.real_sign() {
            return s;
        }
        let mut prec = 64;
        let cap = 4096;
        loop {
            let b = self.ball(prec);
            if let Some(s) = b.re_sign() {
                if s != Sign::NoSign {
                    return s;
                }
            }
            if prec == 256 {
                // Re(x) = 0 iff x^2 is real and nonpositive
                let sq = self.try_mul(self).expect("square");
                if sq.is_real() && sq.real_sign() != Some(Sign::Plus) {
                    return Sign::NoSign;
                }
            }
            if prec >= cap {
                return b.re.sign();
            }
            prec *= 2;
        }
    }

    /// Sign of the imaginary part, exact for real scalars.
    pub fn im_sign(&self) -> Sign {
        if self.is_real() {
            return Sign::NoSign;
        }
        let mut prec = 64;
        loop {
            let b = self.ball(prec);
            if let Some(s) = b.im_sign() {
                if s != Sign::NoSign {
                    return s;
                }
            }
            prec *= 2;
        }
    }

    /// Lexicographic order on (real part, imaginary part) of the embedding.
    pub fn cmp_embedded(&self, o: &Scalar) -> Ordering {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return a.cmp(&b);
        }
        if self.eq_exact(o) {
            return Ordering::Equal;
        }
        let d = self.try_sub(o).expect("context merge overflow");
        match d.re_sign() {
            Sign::Plus => Ordering::Greater,
            Sign::Minus => Ordering::Less,
            Sign::NoSign => match d.im_sign() {
                Sign::Plus => Ordering::Greater,
                Sign::Minus => Ordering::Less,
                Sign::NoSign => self.to_string().cmp(&o.to_string()),
            },
        }
    }

    /// A square root, following the principal branch of the embedding
    /// (nonnegative real part, ties broken by nonnegative imaginary part).
    pub fn sqrt(&self) -> Result<Scalar, NumericError> {
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        if let Some(r) = self.as_rational() {
            return Ok(rational_sqrt_scalar(&r));
        }
        let (ctx, rep) = self.live();
        if ctx.degree() == 2 && ctx.is_irreducible() {
            if let Some(y) = self.quadratic_sqrt() {
                return Ok(y);
            }
        }
        let negative_real = self.is_real() && self.real_sign() == Some(Sign::Minus);
        let me = self.clone();
        let root_ball = move |prec: u64| -> CBall {
            let mut p = prec;
            loop {
                let b = me.ball(p);
                if negative_real {
                    let r = b.neg().sqrt(p).expect("positive ball");
                    // i * r
                    return CBall { re: r.im.neg(), im: r.re, rad: r.rad };
                }
                if let Some(r) = b.sqrt(p) {
                    return r;
                }
                p *= 2;
            }
        };
        let lit = format!("sqrt({})", self);
        let (new, t_img) = context::adjoin_sqrt(&ctx, &rep, &root_ball, lit)?;
        Ok(Scalar::from_parts(new, t_img))
    }

    /// Square root inside a quadratic field, if it exists there.
    fn quadratic_sqrt(&self) -> Option<Scalar> {
        let (ctx, rep) = self.live();
        let m = ctx.modulus();
        // θ^2 + pθ + c = 0
        let p = &m[1];
        let c0 = &m[0];
        let a = rep.first().cloned().unwrap_or_else(BigRational::zero);
        let b = rep.get(1).cloned().unwrap_or_else(BigRational::zero);
        let norm = &a * &a - &a * &b * p + &b * &b * c0;
        let trace = &a * q(2) - &b * p;
        let n = context::rational_sqrt(&norm)?;
        for nn in [n.clone(), -n.clone()] {
            let s = &trace + &nn * q(2);
            if let Some(t) = context::rational_sqrt(&s) {
                if t.is_zero() {
                    continue;
                }
                let y = self.try_add(&Scalar::from_rational(nn.clone())).ok()?.scale(&t.recip());
                if y.try_mul(&y).ok()?.eq_exact(self) {
                    let b = y.ball(64);
                    let principal = match b.re_sign() {
                        Some(Sign::Plus) => true,
                        Some(Sign::Minus) => false,
                        _ => y.re_sign() == Sign::Plus || (y.re_sign() == Sign::NoSign && y.im_sign() != Sign::Minus),
                    };
                    return Some(if principal { y } else { -y });
                }
            }
        }
        None
    }

    /// Order `m` if the scalar is a root of unity, searching all `m` with
    /// `φ(m)` at most the degree of its minimal polynomial.
    pub fn is_root_of_unity(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_one() {
                Some(1)
            } else if r == -BigRational::one() {
                Some(2)
            } else {
                None
            };
        }
        let b = self.ball(64);
        let one = crate::numeric::dyadic::Dyadic::from_int(1);
        if b.abs_down() > one || b.abs_up() < one {
            return None;
        }
        let deg = qpoly::degree(&self.minpoly()).unwrap_or(1) as u64;
        let mut m = 1u64;
        let limit = 2 * deg * deg + 2;
        while m <= limit {
            if euler_phi(m) <= deg {
                let bp = b.pow(m, 96);
                if bp.overlaps(&CBall::from_int(1)) && self.pow(m as i64).ok()?.is_one() {
                    return Some(m);
                }
            }
            m += 1;
        }
        None
    }

    /// Exact literal with `atom` as the generator name.
    fn render(&self) -> String {
        let (ctx, rep) = self.live();
        if rep.is_empty() {
            return "0".into();
        }
        if ctx.is_rational() || rep.len() == 1 {
            return rep[0].to_string();
        }
        let g = ctx.atom();
        let mut out = String::new();
        for (k, c) in rep.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mon = vec![g.as_str(); k].join("*");
            if k == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mon);
            } else {
                out.push_str(&format!("{}*{}", abs, mon));
            }
        }
        out
    }
}

fn rational_sqrt_scalar(r: &BigRational) -> Scalar {
    // sqrt(n/d) = sqrt(n d)/d
    let nd = r.numer() * r.denom();
    let (sq, rest) = split_square(&nd);
    let coef = BigRational::new(sq, r.denom().clone());
    let radicand = if nd.is_negative() { -rest } else { rest };
    if radicand.is_one() {
        return Scalar::from_rational(coef);
    }
    let (ctx, s) = context::sqrt_context_scaled(&radicand);
    Scalar::from_parts(ctx, vec![BigRational::zero(), coef * s])
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut r = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// Smallest `(k1, k2)` (by `|k1|+|k2|`, then lexicographically, `k1 > 0`)
/// with `a^k1 = d^k2` and `1 ≤ |k1|, |k2| ≤ bound`.
pub fn mult_dependence(a: &Scalar, d: &Scalar, bound: u32) -> Option<(i64, i64)> {
    let (a, d) = Scalar::common(a, d).ok()?;
    let b = bound as i64;
    let mut cands: Vec<(i64, i64)> = vec![];
    for k1 in 1..=b {
        for k2 in -b..=b {
            if k2 != 0 {
                cands.push((k1, k2));
            }
        }
    }
    cands.sort_by_key(|&(k1, k2)| (k1.abs() + k2.abs(), k1, k2));
    // ball powers for a quick filter
    let prec = 128;
    let ab = a.ball(prec);
    let db = d.ball(prec);
    let dinv = db.inv(prec);
    for (k1, k2) in cands {
        let lhs = ab.pow(k1 as u64, prec);
        let rhs = if k2 > 0 {
            db.pow(k2 as u64, prec)
        } else {
            match &dinv {
                Some(di) => di.pow((-k2) as u64, prec),
                None => continue,
            }
        };
        if lhs.disjoint(&rhs) {
            continue;
        }
        let x = a.pow(k1).ok()?;
        let y = d.pow(k2).ok()?;
        if x.eq_exact(&y) {
            return Some((k1, k2));
        }
    }
    None
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.eq_exact(other)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let (ctx, rep) = self.live();
        Scalar { ctx, rep: qpoly::neg(&rep) }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$f(o).expect("context merge overflow")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$f(&o).expect("context merge overflow")
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$f(o).expect("context merge overflow")
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$f(&o).expect("context merge overflow")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::from_rational(v)
    }
}

/// Convenience: the integer value of a rational scalar, if integral and small.
pub fn small_int(s: &Scalar) -> Option<i64> {
    let r = s.as_rational()?;
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Is `r` an integer?
pub fn is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}

/// `gcd` of two integers, exposed for progression arithmetic.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> Scalar {
        Scalar::from_int(2).sqrt().unwrap()
    }

    #[test]
    fn rational_arith() {
        let a = Scalar::frac(1, 2) + Scalar::frac(1, 3);
        assert_eq!(a.as_rational().unwrap(), BigRational::new(5.into(), 6.into()));
    }

    #[test]
    fn inverse_of_sqrt2() {
        let r = s2();
        let inv = r.inv().unwrap();
        assert!(inv.eq_exact(&r.scale(&BigRational::new(1.into(), 2.into()))));
    }

    #[test]
    fn sqrt2_times_sqrt8() {
        let p = s2() * Scalar::from_int(8).sqrt().unwrap();
        assert_eq!(p.as_rational().unwrap(), q(4));
    }

    #[test]
    fn sqrt_minus_one() {
        let i = Scalar::from_int(-1).sqrt().unwrap();
        assert!((&i * &i).eq_exact(&Scalar::from_int(-1)));
        assert_eq!(i.to_string(), "i");
        assert!(i.ball(64).im.to_f64() > 0.0);
    }

    #[test]
    fn zero_detection() {
        let r = s2();
        assert!((&r * &r - Scalar::from_int(2)).is_zero());
        let tiny = Scalar::from_rational(BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 100)));
        assert!(!tiny.is_zero());
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(Scalar::one().is_root_of_unity(), Some(1));
        assert_eq!(Scalar::from_int(-1).is_root_of_unity(), Some(2));
        let w = Scalar::generator(&context::cyclotomic_context(3));
        assert_eq!(w.is_root_of_unity(), Some(3));
        let i = Scalar::from_int(-1).sqrt().unwrap();
        let z = (Scalar::from_int(3) + Scalar::from_int(4) * i).scale(&BigRational::new(1.into(), 5.into()));
        assert_eq!(z.is_root_of_unity(), None);
    }

    #[test]
    fn dependence() {
        assert_eq!(mult_dependence(&Scalar::from_int(4), &Scalar::from_int(8), 10), Some((3, 2)));
        assert_eq!(mult_dependence(&Scalar::from_int(2), &Scalar::from_int(3), 20), None);
        assert_eq!(mult_dependence(&s2(), &s2(), 5), Some((1, 1)));
        assert_eq!(mult_dependence(&Scalar::from_int(2), &Scalar::frac(1, 4), 5), Some((2, -1)));
    }

    #[test]
    fn sqrt_in_quadratic_field() {
        // 3 + 2 sqrt(2) = (1 + sqrt(2))^2
        let x = Scalar::from_int(3) + Scalar::from_int(2) * s2();
        let y = x.sqrt().unwrap();
        assert!(y.eq_exact(&(Scalar::one() + s2())));
        assert_eq!(y.context().degree(), 2);
    }

    #[test]
    fn sqrt_extends_field() {
        let x = Scalar::one() + s2();
        let y = x.sqrt().unwrap();
        assert!((&y * &y).eq_exact(&x));
        assert_eq!(y.context().degree(), 4);
        assert!(y.ball(64).re.to_f64() > 0.0);
    }

    #[test]
    fn sqrt_of_negative_real_in_real_field() {
        let x = -(Scalar::one() + s2());
        let y = x.sqrt().unwrap();
        assert!((&y * &y).eq_exact(&x));
        let b = y.ball(64);
        assert!(b.im.to_f64() > 0.0 && b.re.to_f64().abs() < 1e-15);
    }

    #[test]
    fn split_on_zero_divisor() {
        // sqrt(2) and sqrt(8)/2 live in the same field; the merged algebra is reducible
        let a = s2();
        let three = Scalar::from_int(3).sqrt().unwrap();
        let six = Scalar::from_int(6).sqrt().unwrap();
        let d = &a * &three - &six;
        assert!(d.is_zero());
        let e = &a * &three + &six;
        assert!(!e.is_zero());
        assert!(e.inv().is_ok());
    }
}
