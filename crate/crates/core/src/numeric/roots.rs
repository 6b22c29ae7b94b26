//! Certified isolation of the complex roots of a squarefree polynomial over ℚ.
//!
//! Approximations come from Aberth iteration (first in `f64`, then in dyadic
//! arithmetic); certification uses the Weierstrass inclusion disks
//! `D(z_i, n |W_i|)`, which isolate one root each once they are pairwise disjoint.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::dyadic::{CBall, Dyadic};
use super::error::NumericError;
use super::qpoly::{self, QPoly};

/// Highest working precision tried before giving up.
pub const MAX_PREC: u64 = 1 << 14;

/// Nonrigorous complex dyadic used for iterations.
#[derive(Clone, Debug)]
struct Cf {
    re: Dyadic,
    im: Dyadic,
}

impl Cf {
    fn zero() -> Self {
        Cf { re: Dyadic::zero(), im: Dyadic::zero() }
    }
    fn one() -> Self {
        Cf { re: Dyadic::from_int(1), im: Dyadic::zero() }
    }
    fn from_c64(z: Complex64) -> Self {
        Cf { re: Dyadic::from_f64(z.re), im: Dyadic::from_f64(z.im) }
    }
    fn round(self, p: u64) -> Self {
        Cf { re: self.re.round(p).0, im: self.im.round(p).0 }
    }
    fn add(&self, o: &Cf, p: u64) -> Cf {
        Cf { re: self.re.add(&o.re), im: self.im.add(&o.im) }.round(p)
    }
    fn sub(&self, o: &Cf, p: u64) -> Cf {
        Cf { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }.round(p)
    }
    fn mul(&self, o: &Cf, p: u64) -> Cf {
        Cf { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }.round(p)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn div(&self, o: &Cf, p: u64) -> Option<Cf> {
        if o.is_zero() {
            return None;
        }
        let n = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let num_re = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let num_im = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        Some(Cf { re: num_re.div(&n, p).0, im: num_im.div(&n, p).0 }.round(p))
    }
    fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        a.max(b)
    }
    fn ball(&self) -> CBall {
        CBall::exact(self.re.clone(), self.im.clone())
    }
}

fn eval_with_derivative(coeffs: &[Cf], z: &Cf, p: u64) -> (Cf, Cf) {
    let mut val = Cf::zero();
    let mut der = Cf::zero();
    for c in coeffs.iter().rev() {
        der = der.mul(z, p).add(&val, p);
        val = val.mul(z, p).add(c, p);
    }
    (val, der)
}

fn log2_rational(c: &BigRational) -> f64 {
    if c.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (n, d) = (c.numer(), c.denom());
    let top = |x: &num_bigint::BigInt| -> f64 {
        let b = x.bits() as i64;
        let shift = (b - 60).max(0);
        let t: num_bigint::BigInt = x >> (shift as usize);
        t.to_f64().unwrap().abs().log2() + shift as f64
    };
    top(n) - top(d)
}

/// Initial guesses on a circle whose radius follows the coefficient sizes.
fn circle_guesses(p: &[BigRational]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let lead = log2_rational(&p[n]);
    let mut r = f64::NEG_INFINITY;
    for k in 1..=n {
        let l = log2_rational(&p[n - k]);
        if l.is_finite() {
            r = r.max((l - lead) / k as f64);
        }
    }
    if !r.is_finite() {
        r = 0.0;
    }
    let rad = 2f64.powf(r.clamp(-900.0, 900.0));
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(rad, t)
        })
        .collect()
}

fn aberth_f64(p: &[BigRational]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let lc = &p[n];
    let mut cs = Vec::with_capacity(n + 1);
    for c in p {
        let v = (c / lc).to_f64().unwrap_or(f64::NAN);
        if !v.is_finite() {
            return circle_guesses(p);
        }
        cs.push(Complex64::new(v, 0.0));
    }
    let mut z = circle_guesses(p);
    for _ in 0..500 {
        let mut done = true;
        for i in 0..n {
            let mut val = Complex64::new(0.0, 0.0);
            let mut der = Complex64::new(0.0, 0.0);
            for c in cs.iter().rev() {
                der = der * z[i] + val;
                val = val * z[i] + c;
            }
            if val == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = val / der;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let corr = ratio / (1.0 - ratio * s);
            if !corr.is_finite() {
                continue;
            }
            z[i] -= corr;
            if corr.norm() > 1e-15 * z[i].norm().max(1e-300) {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    if z.iter().any(|w| !w.is_finite()) {
        return circle_guesses(p);
    }
    z
}

/// Aberth iteration at working precision `w`. Returns whether it converged.
fn aberth_dyadic(coeffs: &[Cf], z: &mut [Cf], w: u64, max_iter: usize) -> bool {
    let n = z.len();
    for _ in 0..max_iter {
        let mut done = true;
        for i in 0..n {
            let (val, der) = eval_with_derivative(coeffs, &z[i], w);
            if val.is_zero() {
                continue;
            }
            let ratio = match val.div(&der, w) {
                Some(r) => r,
                None => {
                    done = false;
                    continue;
                }
            };
            let mut s = Cf::zero();
            let mut ok = true;
            for j in 0..n {
                if j != i {
                    match Cf::one().div(&z[i].sub(&z[j], w), w) {
                        Some(t) => s = s.add(&t, w),
                        None => ok = false,
                    }
                }
            }
            if !ok {
                // coincident approximations: nudge apart
                z[i] = z[i].add(&Cf { re: Dyadic::pow2(-(w as i64) / 4), im: Dyadic::pow2(-(w as i64) / 3) }, w);
                done = false;
                continue;
            }
            let den = Cf::one().sub(&ratio.mul(&s, w), w);
            let corr = match ratio.div(&den, w) {
                Some(c) => c,
                None => ratio,
            };
            z[i] = z[i].sub(&corr, w);
            let scale = z[i].log2_abs().max(-(w as f64));
            if corr.log2_abs() > scale - w as f64 + 6.0 {
                done = false;
            }
        }
        if done {
            return true;
        }
    }
    false
}

/// Rigorous Weierstrass inclusion disks around the approximations.
fn weierstrass_disks(p: &[BigRational], z: &[Cf], w: u64) -> Option<Vec<CBall>> {
    let n = z.len();
    let lc = CBall::from_rational(&p[n], w);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let zi = z[i].ball();
        let val = qpoly::eval_ball(p, &zi, w);
        let mut prod = lc.clone();
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                prod = prod.mul(&zi.sub(&zj.ball(), w), w);
            }
        }
        let wi = val.div(&prod, w)?;
        let r = wi.abs_up().mul(&Dyadic::from_int(n as i64)).round_up();
        out.push(CBall { re: zi.re, im: zi.im, rad: r });
    }
    Some(out)
}

fn pairwise_disjoint(disks: &[CBall]) -> bool {
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            if !disks[i].disjoint(&disks[j]) {
                return false;
            }
        }
    }
    true
}

/// Isolate all complex roots of a squarefree polynomial.
///
/// Each returned disk contains exactly one root and the disks are pairwise
/// disjoint. Radii are roughly `2^-prec` relative to the root size.
pub fn isolate(p: &[BigRational], prec: u64) -> Result<Vec<CBall>, NumericError> {
    let p: QPoly = qpoly::trim(p.to_vec());
    let n = match qpoly::degree(&p) {
        None => return Err(NumericError::ZeroPolynomial),
        Some(d) => d,
    };
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        let r = -&p[0] / &p[1];
        return Ok(vec![ball_for_rational(&r, prec)]);
    }
    let guesses = aberth_f64(&p);
    let mut z: Vec<Cf> = guesses.into_iter().map(Cf::from_c64).collect();
    let mut w = prec.max(64);
    let mut first = true;
    loop {
        let lc = &p[n];
        let coeffs: Vec<Cf> = p.iter().map(|c| Cf { re: Dyadic::from_rational(&(c / lc), w + 16).0, im: Dyadic::zero() }).collect();
        let iters = if first { 200 + 4 * n } else { 60 };
        first = false;
        aberth_dyadic(&coeffs, &mut z, w + 16, iters);
        if let Some(disks) = weierstrass_disks(&p, &z, w + 16) {
            if pairwise_disjoint(&disks) && small_enough(&disks, prec) {
                return Ok(disks);
            }
        }
        if w >= MAX_PREC {
            return Err(NumericError::PrecisionExhausted(MAX_PREC));
        }
        w *= 2;
    }
}

fn small_enough(disks: &[CBall], prec: u64) -> bool {
    disks.iter().all(|d| {
        if d.rad.is_zero() {
            return true;
        }
        let mag = d.re.log2_abs().max(d.im.log2_abs()).max(0.0);
        d.rad.log2_abs() <= mag - prec as f64 + 8.0
    })
}

/// Exact enclosure of a rational as a ball at the given precision.
pub fn ball_for_rational(r: &BigRational, prec: u64) -> CBall {
    CBall::from_rational(r, prec + 8)
}

/// Refine the unique root of `p` inside `disk` to about `prec` relative bits.
pub fn refine(p: &[BigRational], disk: &CBall, prec: u64) -> Result<CBall, NumericError> {
    let n = qpoly::degree(p).ok_or(NumericError::ZeroPolynomial)?;
    if n == 1 {
        return Ok(ball_for_rational(&(-&p[0] / &p[1]), prec));
    }
    let dp = qpoly::derivative(p);
    let mut w = prec + 16;
    let mut z = Cf { re: disk.re.clone(), im: disk.im.clone() };
    loop {
        for _ in 0..(8 + (w as f64).log2() as usize * 2) {
            let zb = z.ball();
            let v = qpoly::eval_ball(p, &zb, w);
            let d = qpoly::eval_ball(&dp, &zb, w);
            let vc = Cf { re: v.re.clone(), im: v.im.clone() };
            let dc = Cf { re: d.re.clone(), im: d.im.clone() };
            match vc.div(&dc, w) {
                Some(step) => {
                    let small = step.log2_abs() < z.log2_abs().max(0.0) - w as f64;
                    z = z.sub(&step, w);
                    if small || step.is_zero() {
                        break;
                    }
                }
                None => break,
            }
        }
        let zb = z.ball();
        let v = qpoly::eval_ball(p, &zb, w);
        let d = qpoly::eval_ball(&dp, &zb, w);
        if let Some(ratio) = v.div(&d, w) {
            let r = ratio.abs_up().mul(&Dyadic::from_int(n as i64)).round_up();
            let cand = CBall { re: zb.re.clone(), im: zb.im.clone(), rad: r };
            if disk.contains(&cand) && small_enough(std::slice::from_ref(&cand), prec) {
                return Ok(cand);
            }
        }
        if w > MAX_PREC * 2 {
            break;
        }
        w *= 2;
    }
    // fall back to full isolation and pick the disk inside the old one
    let mut p2 = prec;
    loop {
        let all = isolate(p, p2)?;
        let inside: Vec<&CBall> = all.iter().filter(|b| b.overlaps(disk)).collect();
        if inside.len() == 1 && disk.contains(inside[0]) {
            return Ok(inside[0].clone());
        }
        if p2 >= MAX_PREC {
            return Err(NumericError::PrecisionExhausted(MAX_PREC));
        }
        p2 *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::qpoly::from_i64s;

    #[test]
    fn isolates_quadratic() {
        let d = isolate(&from_i64s(&[-2, 0, 1]), 64).unwrap();
        assert_eq!(d.len(), 2);
        let mut xs: Vec<f64> = d.iter().map(|b| b.re.to_f64()).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((xs[1] - 2f64.sqrt()).abs() < 1e-15);
        assert!((xs[0] + 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn isolates_degree_64() {
        let mut c = vec![0i64; 65];
        c[64] = 1;
        c[1] = -1;
        c[0] = -1;
        let d = isolate(&from_i64s(&c), 128).unwrap();
        assert_eq!(d.len(), 64);
    }

    #[test]
    fn refine_sharpens() {
        let p = from_i64s(&[-2, 0, 1]);
        let d = isolate(&p, 64).unwrap();
        let r = refine(&p, &d[0], 512).unwrap();
        assert!(r.rad.log2_abs() < -500.0);
        assert!(d[0].contains(&r));
    }

    #[test]
    fn cyclotomic_roots() {
        let p = from_i64s(&[1, 1, 1, 1, 1]);
        let d = isolate(&p, 80).unwrap();
        for b in d {
            let m = b.abs_up().to_f64();
            assert!((m - 1.0).abs() < 1e-15);
        }
    }
}
