//! Dyadic floats and complex balls with outward rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Bits kept when computing radii and other error terms.
const RAD_BITS: u64 = 64;

/// `mant * 2^exp`, exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }.normalized()
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Dyadic::new(v.clone(), 0)
    }

    /// `2^e`
    pub fn pow2(e: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1i64 << 52), raw_exp - 1075) };
        Dyadic::new(BigInt::from(sign * m), e)
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz as usize;
            self.exp += tz as i64;
        }
        self
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Smallest `k` with `|self| < 2^k` (meaningless for zero).
    pub fn mag_exp(&self) -> i64 {
        self.bits() as i64 + self.exp
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &o.mant << ((o.exp - e) as usize);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Truncate to `prec` significant bits. Returns the rounded value and an
    /// upper bound on the absolute rounding error.
    pub fn round(&self, prec: u64) -> (Dyadic, Dyadic) {
        let b = self.bits();
        if b <= prec {
            return (self.clone(), Dyadic::zero());
        }
        let k = b - prec;
        let m = &self.mant >> (k as usize);
        (Dyadic::new(m, self.exp + k as i64), Dyadic::pow2(self.exp + k as i64))
    }

    /// For a nonnegative value, a nonnegative upper bound with at most `RAD_BITS` bits.
    pub fn round_up(&self) -> Dyadic {
        debug_assert!(!self.is_negative());
        let b = self.bits();
        if b <= RAD_BITS {
            return self.clone();
        }
        let k = b - RAD_BITS;
        let m = (&self.mant >> (k as usize)) + 1u32;
        Dyadic::new(m, self.exp + k as i64)
    }

    /// For a nonnegative value, a nonnegative lower bound with at most `RAD_BITS` bits.
    pub fn round_down(&self) -> Dyadic {
        debug_assert!(!self.is_negative());
        self.round(RAD_BITS).0
    }

    /// Upper bound of `|self|` rounded to few bits.
    pub fn abs_up(&self) -> Dyadic {
        self.abs().round_up()
    }

    /// `self / o` truncated to about `prec` bits, with an error bound.
    pub fn div(&self, o: &Dyadic, prec: u64) -> (Dyadic, Dyadic) {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        let shift = (prec as i64 + o.bits() as i64 - self.bits() as i64 + 2).max(0);
        let num = &self.mant << (shift as usize);
        let q = &num / &o.mant;
        let e = self.exp - o.exp - shift;
        (Dyadic::new(q, e), Dyadic::pow2(e))
    }

    /// Upper bound of `self / o` for nonnegative `self` and positive `o`.
    pub fn div_up(&self, o: &Dyadic) -> Dyadic {
        let (q, err) = self.div(o, RAD_BITS);
        q.add(&err).round_up()
    }

    /// Lower bound of `self / o` for nonnegative `self` and positive `o`.
    pub fn div_down(&self, o: &Dyadic) -> Dyadic {
        let (q, err) = self.div(o, RAD_BITS);
        let v = q.sub(&err);
        if v.is_negative() {
            Dyadic::zero()
        } else {
            v.round_down()
        }
    }

    /// Floor square root of a nonnegative value to about `prec` bits, with error bound.
    pub fn sqrt(&self, prec: u64) -> (Dyadic, Dyadic) {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        let mut shift = (2 * prec as i64 - self.bits() as i64 + 2).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mant << (shift as usize);
        let r = m.sqrt();
        let e = (self.exp - shift) / 2;
        (Dyadic::new(r, e), Dyadic::pow2(e))
    }

    /// Upper bound of the square root of a nonnegative value.
    pub fn sqrt_up(&self) -> Dyadic {
        let (r, err) = self.sqrt(RAD_BITS);
        r.add(&err).round_up()
    }

    /// Lower bound of the square root of a nonnegative value.
    pub fn sqrt_down(&self) -> Dyadic {
        self.sqrt(RAD_BITS).0.round_down()
    }

    /// Floor of `q` with `prec` significant bits plus an error bound.
    pub fn from_rational(q: &BigRational, prec: u64) -> (Dyadic, Dyadic) {
        let num = Dyadic::from_bigint(q.numer());
        let den = q.denom();
        if den.is_one() {
            return (num, Dyadic::zero());
        }
        let tz = den.trailing_zeros().unwrap_or(0);
        let odd: BigInt = den >> (tz as usize);
        if odd.is_one() {
            return (num.mul_pow2(-(tz as i64)), Dyadic::zero());
        }
        num.div(&Dyadic::from_bigint(den), prec)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as usize))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.bits() as i64;
        let (m, e) = if b > 60 { (&self.mant >> ((b - 60) as usize), self.exp + b - 60) } else { (self.mant.clone(), self.exp) };
        let mf = m.to_f64().unwrap_or(0.0);
        ldexp(mf, e)
    }

    /// Approximate log2 of the absolute value.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let b = self.bits() as i64;
        let top = if b > 60 { &self.mant >> ((b - 60) as usize) } else { self.mant.clone() };
        let shift = if b > 60 { b - 60 } else { 0 };
        top.abs().to_f64().unwrap().log2() + (self.exp + shift) as f64
    }

    /// Decimal rendering with about `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let q = self.to_rational();
        rational_to_decimal(&q, digits)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

pub fn ldexp(x: f64, e: i64) -> f64 {
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

/// Scientific-notation rendering of a rational with `digits` significant digits (truncated).
pub fn rational_to_decimal(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigInt::from(10);
    // find exponent k with 10^k <= a < 10^(k+1)
    let approx = a.numer().bits() as f64 - a.denom().bits() as f64;
    let mut k = (approx * std::f64::consts::LN_2 / std::f64::consts::LN_10).floor() as i64;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(k) > a {
        k -= 1;
    }
    while pow10(k + 1) <= a {
        k += 1;
    }
    let scaled = &a / pow10(k - digits as i64 + 1);
    let int = scaled.to_integer();
    let s = int.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    if k != 0 {
        out.push_str(&format!("e{}", k));
    }
    out
}

/// A closed disk in the complex plane with dyadic center and radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBall {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Dyadic,
}

impl CBall {
    pub fn zero() -> Self {
        CBall { re: Dyadic::zero(), im: Dyadic::zero(), rad: Dyadic::zero() }
    }

    pub fn exact(re: Dyadic, im: Dyadic) -> Self {
        CBall { re, im, rad: Dyadic::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        CBall::exact(Dyadic::from_int(v), Dyadic::zero())
    }

    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        let (m, err) = Dyadic::from_rational(q, prec);
        CBall { re: m, im: Dyadic::zero(), rad: err.round_up() }
    }

    pub fn with_rad(mut self, r: Dyadic) -> Self {
        self.rad = self.rad.add(&r).round_up();
        self
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    fn finish(re: Dyadic, im: Dyadic, rad: Dyadic, prec: u64) -> CBall {
        let (r, er) = re.round(prec);
        let (i, ei) = im.round(prec);
        CBall { re: r, im: i, rad: rad.add(&er).add(&ei).round_up() }
    }

    pub fn neg(&self) -> CBall {
        CBall { re: self.re.neg(), im: self.im.neg(), rad: self.rad.clone() }
    }

    pub fn conj(&self) -> CBall {
        CBall { re: self.re.clone(), im: self.im.neg(), rad: self.rad.clone() }
    }

    pub fn add(&self, o: &CBall, prec: u64) -> CBall {
        CBall::finish(self.re.add(&o.re), self.im.add(&o.im), self.rad.add(&o.rad), prec)
    }

    pub fn sub(&self, o: &CBall, prec: u64) -> CBall {
        self.add(&o.neg(), prec)
    }

    /// Upper bound on `|mid|`.
    pub fn mid_abs_up(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).round_up().sqrt_up()
    }

    /// Lower bound on `|mid|`.
    pub fn mid_abs_down(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).round_down().sqrt_down()
    }

    /// Upper bound on `|z|` over the ball.
    pub fn abs_up(&self) -> Dyadic {
        self.mid_abs_up().add(&self.rad).round_up()
    }

    /// Lower bound on `|z|` over the ball (zero if the ball meets the origin).
    pub fn abs_down(&self) -> Dyadic {
        let v = self.mid_abs_down().sub(&self.rad);
        if v.is_negative() {
            Dyadic::zero()
        } else {
            v.round_down()
        }
    }

    pub fn mul(&self, o: &CBall, prec: u64) -> CBall {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        let mut rad = Dyadic::zero();
        if !self.rad.is_zero() || !o.rad.is_zero() {
            let a = self.mid_abs_up();
            let b = o.mid_abs_up();
            rad = a.mul(&o.rad).add(&b.mul(&self.rad)).add(&self.rad.mul(&o.rad));
        }
        CBall::finish(re, im, rad, prec)
    }

    pub fn mul_pow2(&self, k: i64) -> CBall {
        CBall { re: self.re.mul_pow2(k), im: self.im.mul_pow2(k), rad: self.rad.mul_pow2(k) }
    }

    pub fn sqr(&self, prec: u64) -> CBall {
        self.mul(self, prec)
    }

    /// Reciprocal; `None` when the ball meets zero.
    pub fn inv(&self, prec: u64) -> Option<CBall> {
        let low = self.mid_abs_down();
        if low.is_zero() || low <= self.rad {
            return None;
        }
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let (qr, er) = self.re.div(&n, prec + 4);
        let (qi, ei) = self.im.neg().div(&n, prec + 4);
        let mut rad = er.add(&ei);
        if !self.rad.is_zero() {
            let gap = low.sub(&self.rad).round_down();
            if gap.is_zero() {
                return None;
            }
            let den = low.mul(&gap).round_down();
            rad = rad.add(&self.rad.div_up(&den));
        }
        Some(CBall::finish(qr, qi, rad, prec))
    }

    pub fn div(&self, o: &CBall, prec: u64) -> Option<CBall> {
        Some(self.mul(&o.inv(prec + 4)?, prec))
    }

    pub fn pow(&self, n: u64, prec: u64) -> CBall {
        let mut base = self.clone();
        let mut acc = CBall::from_int(1);
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr(prec);
            }
        }
        acc
    }

    /// True if the ball may contain zero.
    pub fn contains_zero(&self) -> bool {
        self.mid_abs_down() <= self.rad
    }

    /// Upper bound on the distance between centers.
    pub fn center_dist_up(&self, o: &CBall) -> Dyadic {
        let dr = self.re.sub(&o.re);
        let di = self.im.sub(&o.im);
        dr.mul(&dr).add(&di.mul(&di)).round_up().sqrt_up()
    }

    pub fn center_dist_down(&self, o: &CBall) -> Dyadic {
        let dr = self.re.sub(&o.re);
        let di = self.im.sub(&o.im);
        dr.mul(&dr).add(&di.mul(&di)).round_down().sqrt_down()
    }

    /// Certainly disjoint.
    pub fn disjoint(&self, o: &CBall) -> bool {
        self.center_dist_down(o) > self.rad.add(&o.rad)
    }

    pub fn overlaps(&self, o: &CBall) -> bool {
        !self.disjoint(o)
    }

    /// `o` certainly lies inside `self`.
    pub fn contains(&self, o: &CBall) -> bool {
        self.center_dist_up(o).add(&o.rad) <= self.rad
    }

    pub fn re_low(&self) -> Dyadic {
        self.re.sub(&self.rad)
    }

    pub fn re_high(&self) -> Dyadic {
        self.re.add(&self.rad)
    }

    pub fn im_low(&self) -> Dyadic {
        self.im.sub(&self.rad)
    }

    pub fn im_high(&self) -> Dyadic {
        self.im.add(&self.rad)
    }

    /// Sign of the real part if the ball decides it.
    pub fn re_sign(&self) -> Option<Sign> {
        if self.re_low().sign() == Sign::Plus {
            Some(Sign::Plus)
        } else if self.re_high().sign() == Sign::Minus {
            Some(Sign::Minus)
        } else if self.re.is_zero() && self.rad.is_zero() {
            Some(Sign::NoSign)
        } else {
            None
        }
    }

    pub fn im_sign(&self) -> Option<Sign> {
        if self.im_low().sign() == Sign::Plus {
            Some(Sign::Plus)
        } else if self.im_high().sign() == Sign::Minus {
            Some(Sign::Minus)
        } else if self.im.is_zero() && self.rad.is_zero() {
            Some(Sign::NoSign)
        } else {
            None
        }
    }

    /// Principal square root. `None` if the ball touches the branch cut
    /// (the closed negative real axis) so that the branch is ambiguous.
    pub fn sqrt(&self, prec: u64) -> Option<CBall> {
        if self.is_exact() && self.re.is_zero() && self.im.is_zero() {
            return Some(CBall::zero());
        }
        let on_cut = self.re_low().sign() != Sign::Plus && self.im_low().sign() != Sign::Plus && self.im_high().sign() != Sign::Minus;
        if on_cut {
            return None;
        }
        let low = self.mid_abs_down();
        if low <= self.rad {
            return None;
        }
        let wp = prec + 8;
        // candidate midpoint via the stable half-angle formulas
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let (absm, _) = n.sqrt(wp);
        let (wr, wi);
        if !self.re.is_negative() {
            let (s, _) = absm.add(&self.re).mul_pow2(-1).sqrt(wp);
            if s.is_zero() {
                return None;
            }
            let (q, _) = self.im.div(&s.mul_pow2(1), wp);
            wr = s;
            wi = q;
        } else {
            let (t, _) = absm.sub(&self.re).mul_pow2(-1).sqrt(wp);
            if t.is_zero() {
                return None;
            }
            let (q, _) = self.im.abs().div(&t.mul_pow2(1), wp);
            wr = q;
            wi = if self.im.is_negative() { t.neg() } else { t };
        }
        let (wr, _) = wr.round(prec);
        let (wi, _) = wi.round(prec);
        let w = CBall::exact(wr, wi);
        // |w - sqrt(mid)| <= |w^2 - mid| / |w| (root inclusion for a quadratic)
        let w2 = w.sqr(prec * 2 + 16);
        let resid = CBall::exact(w2.re.sub(&self.re), w2.im.sub(&self.im)).mid_abs_up();
        let wl = w.mid_abs_down();
        if wl.is_zero() {
            return None;
        }
        let mut rad = resid.div_up(&wl);
        if !self.rad.is_zero() {
            let sl = low.sub(&self.rad).round_down().sqrt_down();
            if sl.is_zero() {
                return None;
            }
            rad = rad.add(&self.rad.div_up(&sl));
        }
        Some(CBall { re: w.re, im: w.im, rad: rad.round_up() })
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// "mid ± radius" decimal rendering.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let mid = if self.im.is_zero() {
            self.re.to_decimal(digits)
        } else if self.re.is_zero() {
            format!("{}*i", self.im.to_decimal(digits))
        } else {
            let im = self.im.to_decimal(digits);
            if let Some(stripped) = im.strip_prefix('-') {
                format!("{} - {}*i", self.re.to_decimal(digits), stripped)
            } else {
                format!("{} + {}*i", self.re.to_decimal(digits), im)
            }
        };
        format!("{} ± {}", mid, self.rad.to_decimal(3))
    }
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(20))
    }
}

/// Integer square root helper for exact-square detection.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Reduce a nonnegative integer to (square part, squarefree part) by trial division
/// up to a small bound; the remaining cofactor is kept whole unless it is a perfect square.
pub fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.abs();
    let mut sq = BigInt::one();
    if rest.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let mut odd = BigInt::one();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        sq *= pb.pow(e / 2);
        if e % 2 == 1 {
            odd *= p;
        }
    }
    if let Some(r) = exact_isqrt(&rest) {
        sq *= &r;
        rest = BigInt::one();
    }
    (sq, rest * odd)
}

/// Primes below 10^5.
fn small_primes() -> &'static [u32] {
    static PRIMES: std::sync::OnceLock<Vec<u32>> = std::sync::OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = 100_000usize;
        let mut sieve = vec![true; n];
        let mut out = vec![];
        for i in 2..n {
            if sieve[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j < n {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn f64_roundtrip() {
        for x in [1.5, -0.1, 3.0e200, 1e-300, 7.0] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn third_encloses() {
        let b = CBall::from_rational(&q(1, 3), 64);
        let r = b.re.to_rational();
        let err = b.rad.to_rational();
        assert!((r - q(1, 3)).abs() <= err);
        assert!(err < BigRational::new(BigInt::one(), BigInt::one() << 60));
    }

    #[test]
    fn sqrt_two() {
        let b = CBall::from_int(2).sqrt(100).unwrap();
        let s = b.sqr(200);
        let diff = s.re.to_rational() - q(2, 1);
        assert!(diff.abs() <= s.rad.to_rational());
        assert!((b.re.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sqrt_negative_axis_is_ambiguous() {
        assert!(CBall::from_int(-4).sqrt(64).is_none());
        let z = CBall::exact(Dyadic::from_int(-4), Dyadic::from_int(1));
        let r = z.sqrt(64).unwrap();
        assert!(r.re.to_f64() > 0.0 && r.im.to_f64() > 0.0);
    }

    #[test]
    fn inverse_contains_truth() {
        let z = CBall::from_rational(&q(3, 7), 80);
        let w = z.inv(80).unwrap();
        let t = q(7, 3);
        assert!((w.re.to_rational() - t).abs() <= w.rad.to_rational());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&q(1, 3), 5), "3.3333e-1");
        assert_eq!(rational_to_decimal(&q(-1500, 1), 6), "-1.5e3");
    }

    #[test]
    fn square_split() {
        let (s, r) = split_square(&BigInt::from(72));
        assert_eq!((s, r), (BigInt::from(6), BigInt::from(2)));
    }
}
