//! Mahler measures and Weil heights with certified error bounds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::numeric::context::quick_irreducible;
use crate::numeric::dyadic::Dyadic;
use crate::numeric::qpoly::{self, QPoly};
use crate::numeric::roots::{self, MAX_PREC};
use crate::numeric::{NumericError, Scalar};

use super::HeightError;

/// Requested certified accuracy of logarithmic quantities.
pub const DEFAULT_TOLERANCE: f64 = 1e-13;

/// A real number known to lie in `[value − error, value + error]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifiedReal {
    pub value: f64,
    pub error: f64,
}

impl CertifiedReal {
    pub fn exact(value: f64) -> Self {
        CertifiedReal { value, error: 0.0 }
    }

    pub fn from_bounds(lo: f64, hi: f64) -> Self {
        CertifiedReal { value: 0.5 * (lo + hi), error: 0.5 * (hi - lo) }
    }

    pub fn lo(&self) -> f64 {
        self.value - self.error
    }

    pub fn hi(&self) -> f64 {
        self.value + self.error
    }

    pub fn contains(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.error
    }

    pub fn scale(&self, k: f64) -> Self {
        CertifiedReal { value: self.value * k, error: self.error * k.abs() }
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.value, self.error)
    }
}

/// Slack for one `f64` logarithm of a value given to 60 bits.
fn log_slack(v: f64) -> f64 {
    4e-16 * (1.0 + v.abs())
}

/// `ln |n|` for a nonzero integer.
pub fn ln_bigint(n: &BigInt) -> CertifiedReal {
    let bits = n.bits() as i64;
    let shift = (bits - 60).max(0);
    let top: BigInt = n.abs() >> shift as usize;
    let v = top.to_f64().unwrap_or(f64::MAX).ln() + shift as f64 * std::f64::consts::LN_2;
    CertifiedReal { value: v, error: if bits <= 53 { log_slack(v) * 0.25 } else { log_slack(v) } }
}

/// Interval for `ln x` with `x` between two positive dyadics.
fn ln_range(lo: &Dyadic, hi: &Dyadic) -> (f64, f64) {
    let l = lo.log2_abs() * std::f64::consts::LN_2;
    let h = hi.log2_abs() * std::f64::consts::LN_2;
    (l - log_slack(l), h + log_slack(h))
}

/// A primitive integer polynomial, lowest degree first, positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self, HeightError> {
        let q = qpoly::from_ints(&coeffs);
        if qpoly::is_zero(&q) {
            return Err(HeightError::Numeric(NumericError::ZeroPolynomial));
        }
        Ok(IntPolynomial { coeffs: qpoly::to_primitive_int(&q) })
    }

    pub fn from_i64s(c: &[i64]) -> Result<Self, HeightError> {
        IntPolynomial::new(c.iter().map(|&x| x.into()).collect())
    }

    pub fn from_qpoly(p: &[BigRational]) -> Result<Self, HeightError> {
        if qpoly::is_zero(p) {
            return Err(HeightError::Numeric(NumericError::ZeroPolynomial));
        }
        Ok(IntPolynomial { coeffs: qpoly::to_primitive_int(p) })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_qpoly(&self) -> QPoly {
        qpoly::from_ints(&self.coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", qpoly::to_string_var(&self.to_qpoly(), "x"))
    }
}

/// `log M(P)` with a certified error.
#[derive(Clone, Debug)]
pub struct MahlerMeasure {
    pub log: CertifiedReal,
    /// Bits of the last root isolation.
    pub precision: u64,
}

impl MahlerMeasure {
    pub fn value(&self) -> f64 {
        self.log.value.exp()
    }

    /// Bound on `|M − value()|`.
    pub fn value_error(&self) -> f64 {
        self.value() * (self.log.error.exp() - 1.0) * 1.000001
    }
}

/// `Σ log⁺ |β|` over the roots of a squarefree polynomial, as bounds.
fn log_plus_sum(p: &[BigRational], prec: u64) -> Result<(f64, f64), NumericError> {
    let one = Dyadic::from_int(1);
    let (mut lo, mut hi) = (0.0, 0.0);
    for disk in roots::isolate(p, prec)? {
        let up = disk.abs_up();
        if up <= one {
            continue;
        }
        let down = disk.abs_down();
        let (l, h) = ln_range(if down > one { &down } else { &one }, &up);
        lo += l.max(0.0);
        hi += h;
    }
    Ok((lo, hi))
}

/// `log M(P)` to within `tolerance`, starting at `precision` bits and
/// doubling the isolation precision until the bound is met.
pub fn mahler_measure_tol(p: &IntPolynomial, precision: u64, tolerance: f64) -> Result<MahlerMeasure, HeightError> {
    let q = p.to_qpoly();
    let lead = ln_bigint(p.coeffs.last().expect("nonzero polynomial"));
    let factors = qpoly::yun(&q);
    let mut prec = precision.max(32);
    loop {
        let (mut lo, mut hi) = (lead.lo(), lead.hi());
        for (mult, factor) in &factors {
            let (l, h) = log_plus_sum(factor, prec)?;
            lo += *mult as f64 * l;
            hi += *mult as f64 * h;
        }
        let r = CertifiedReal::from_bounds(lo, hi);
        if r.error <= tolerance {
            return Ok(MahlerMeasure { log: r, precision: prec });
        }
        if prec >= MAX_PREC {
            return Err(HeightError::PrecisionExhausted(prec));
        }
        prec *= 2;
    }
}

pub fn mahler_measure(p: &IntPolynomial, precision: u64) -> Result<MahlerMeasure, HeightError> {
    mahler_measure_tol(p, precision, DEFAULT_TOLERANCE)
}

/// Weil height of an algebraic number together with the polynomial used.
#[derive(Clone, Debug)]
pub struct WeilHeight {
    pub value: CertifiedReal,
    pub poly: IntPolynomial,
    /// The polynomial is known to be irreducible, so `value` is the height
    /// of the number rather than the average over all roots of `poly`.
    pub minimal: bool,
}

/// `log max(|p|, |q|)` for `p/q` in lowest terms.
pub fn rational_height(x: &BigRational) -> CertifiedReal {
    let m = if x.numer().abs() > *x.denom() { x.numer().abs() } else { x.denom().clone() };
    if m == BigInt::from(1) {
        return CertifiedReal::exact(0.0);
    }
    ln_bigint(&m)
}

/// `log M(P)/deg P`, the average height over the roots of `P`.
pub fn height_from_poly(p: &IntPolynomial, precision: u64) -> Result<WeilHeight, HeightError> {
    if p.degree() == 0 {
        return Err(HeightError::Numeric(NumericError::ZeroPolynomial));
    }
    let m = mahler_measure(p, precision)?;
    let d = p.degree() as f64;
    let minimal = quick_irreducible(&p.to_qpoly());
    Ok(WeilHeight { value: m.log.scale(1.0 / d), poly: p.clone(), minimal })
}

/// Weil height of an exact scalar; rationals are handled exactly.
pub fn weil_height(x: &Scalar, precision: u64) -> Result<WeilHeight, HeightError> {
    if let Some(r) = x.as_rational() {
        let poly = IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()])?;
        return Ok(WeilHeight { value: rational_height(&r), poly, minimal: true });
    }
    let mp = x.minpoly();
    let mut h = height_from_poly(&IntPolynomial::from_qpoly(&mp)?, precision)?;
    h.minimal = h.minimal || x.context().is_irreducible();
    Ok(h)
}

/// `M` of a polynomial given by small integer coefficients.
pub fn mahler_i64(c: &[i64]) -> Result<MahlerMeasure, HeightError> {
    mahler_measure(&IntPolynomial::from_i64s(c)?, crate::config::start_precision())
}
