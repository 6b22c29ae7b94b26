//! Dense univariate polynomials over ℚ, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::CBall;

pub type QPoly = Vec<BigRational>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn is_zero(p: &[BigRational]) -> bool {
    degree(p).is_none()
}

pub fn lead(p: &[BigRational]) -> BigRational {
    degree(p).map(|d| p[d].clone()).unwrap_or_else(BigRational::zero)
}

pub fn constant(c: BigRational) -> QPoly {
    trim(vec![c])
}

/// `x^k`
pub fn monomial(c: BigRational, k: usize) -> QPoly {
    if c.is_zero() {
        return vec![];
    }
    let mut v = vec![BigRational::zero(); k + 1];
    v[k] = c;
    v
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x + y);
    }
    trim(out)
}

pub fn neg(a: &[BigRational]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    add(a, &neg(b))
}

pub fn scale(a: &[BigRational], c: &BigRational) -> QPoly {
    if c.is_zero() {
        return vec![];
    }
    trim(a.iter().map(|x| x * c).collect())
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (da, db) = match (degree(a), degree(b)) {
        (Some(x), Some(y)) => (x, y),
        _ => return vec![],
    };
    let mut out = vec![BigRational::zero(); da + db + 1];
    for (i, x) in a[..=da].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b[..=db].iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

pub fn pow(a: &[BigRational], n: usize) -> QPoly {
    let mut acc = vec![q(1)];
    for _ in 0..n {
        acc = mul(&acc, a);
    }
    acc
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("polynomial division by zero");
    let mut r: QPoly = trim(a.to_vec());
    let da = match degree(&r) {
        Some(d) if d >= db => d,
        _ => return (vec![], r),
    };
    let inv_lc = b[db].recip();
    let mut quo = vec![BigRational::zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &inv_lc;
        let shift = dr - db;
        for (i, bc) in b[..=db].iter().enumerate() {
            if !bc.is_zero() {
                r[i + shift] -= &c * bc;
            }
        }
        r[dr] = BigRational::zero();
        quo[shift] = c;
        r = trim(r);
    }
    (trim(quo), r)
}

pub fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    divrem(a, b).1
}

pub fn monic(a: &[BigRational]) -> QPoly {
    match degree(a) {
        None => vec![],
        Some(d) => {
            let inv = a[d].recip();
            a[..=d].iter().map(|c| c * &inv).collect()
        }
    }
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !is_zero(&y) {
        let r = monic(&rem(&x, &y));
        x = y;
        y = r;
    }
    monic(&x)
}

/// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![q(1)], vec![]);
    let (mut t0, mut t1) = (vec![], vec![q(1)]);
    while !is_zero(&r1) {
        let (qq, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&qq, &s1));
        let t2 = sub(&t0, &mul(&qq, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match degree(&r0) {
        None => (vec![], s0, t0),
        Some(d) => {
            let inv = r0[d].recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn derivative(a: &[BigRational]) -> QPoly {
    if a.len() <= 1 {
        return vec![];
    }
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
}

pub fn eval(a: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// `a(b(x))`
pub fn compose(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut acc: QPoly = vec![];
    for c in a.iter().rev() {
        acc = add(&mul(&acc, b), &constant(c.clone()));
    }
    acc
}

/// `x^e mod m`
pub fn powmod_x(e: &BigInt, m: &[BigRational]) -> QPoly {
    let mut result = rem(&[q(1)], m);
    let mut base = rem(&[q(0), q(1)], m);
    let mut e = e.clone();
    while !e.is_zero() {
        if e.is_odd() {
            result = rem(&mul(&result, &base), m);
        }
        e >>= 1usize;
        if !e.is_zero() {
            base = rem(&mul(&base, &base), m);
        }
    }
    result
}

pub fn squarefree_part(a: &[BigRational]) -> QPoly {
    let g = gcd(a, &derivative(a));
    monic(&divrem(a, &g).0)
}

pub fn is_squarefree(a: &[BigRational]) -> bool {
    degree(&gcd(a, &derivative(a))) == Some(0)
}

/// Yun's squarefree decomposition: `a = lc * prod f_i^i` with `f_i` monic,
/// squarefree and pairwise coprime. Returns `(i, f_i)` for nonconstant factors.
pub fn yun(a: &[BigRational]) -> Vec<(usize, QPoly)> {
    let mut out = vec![];
    if degree(a).unwrap_or(0) == 0 {
        return out;
    }
    let a = monic(a);
    let da = derivative(&a);
    let g = gcd(&a, &da);
    let mut b = divrem(&a, &g).0;
    let mut c = divrem(&da, &g).0;
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    loop {
        let f = gcd(&b, &d);
        if degree(&f).unwrap_or(0) > 0 {
            out.push((i, f.clone()));
        }
        b = divrem(&b, &f).0;
        if degree(&b).unwrap_or(0) == 0 {
            break;
        }
        c = divrem(&d, &f).0;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

/// Primitive integer polynomial proportional to `a`, with positive leading coefficient.
pub fn to_primitive_int(a: &[BigRational]) -> Vec<BigInt> {
    let a = trim(a.to_vec());
    if a.is_empty() {
        return vec![];
    }
    let mut den = BigInt::one();
    for c in &a {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = a.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    for c in ints.iter_mut() {
        *c = &*c / &g;
    }
    ints
}

pub fn from_ints(a: &[BigInt]) -> QPoly {
    trim(a.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

pub fn from_i64s(a: &[i64]) -> QPoly {
    trim(a.iter().map(|&c| q(c)).collect())
}

/// Horner evaluation of a rational polynomial on a ball.
pub fn eval_ball(a: &[BigRational], z: &CBall, prec: u64) -> CBall {
    let mut acc = CBall::zero();
    for c in a.iter().rev() {
        acc = acc.mul(z, prec).add(&CBall::from_rational(c, prec), prec);
    }
    acc
}

/// Maximum of `|numerator|` and `|denominator|` bit sizes over the coefficients.
pub fn coeff_bits(a: &[BigRational]) -> u64 {
    a.iter().map(|c| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0)
}

/// Human-readable form in `x`, highest degree first.
pub fn to_string_var(a: &[BigRational], var: &str) -> String {
    let d = match degree(a) {
        None => return "0".into(),
        Some(d) => d,
    };
    let mut out = String::new();
    for i in (0..=d).rev() {
        let c = &a[i];
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
        let mon = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{}^{}", var, i),
        };
        if i == 0 {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mon);
        } else {
            out.push_str(&format!("{}*{}", abs, mon));
        }
    }
    out
}
