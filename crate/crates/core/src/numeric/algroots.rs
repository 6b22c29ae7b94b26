//! Exact roots of polynomials with rational coefficients.
//!
//! Rational roots come out as rationals, quadratic factors through square
//! roots, and anything left over becomes its own context `root(p; k)` where
//! `k` indexes the roots of the primitive squarefree `p` sorted by
//! (real, imaginary) midpoint at a fixed precision.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::context::{self, Built};
use super::error::NumericError;
use super::qpoly::{self, q};
use super::roots;
use super::scalar::Scalar;
use super::CBall;

/// Precision used to order roots for the `root(p; k)` literal. Fixed so that
/// literals mean the same thing under every precision setting.
const ORDER_PREC: u64 = 256;

/// Distinct complex roots of `p`.
pub fn roots_of(p: &[BigRational]) -> Result<Vec<Scalar>, NumericError> {
    let p = qpoly::trim(p.to_vec());
    if qpoly::is_zero(&p) {
        return Err(NumericError::ZeroPolynomial);
    }
    let mut rest = qpoly::squarefree_part(&p);
    let mut out = vec![];
    for r in context::rational_roots(&rest) {
        rest = qpoly::divrem(&rest, &[-r.clone(), q(1)]).0;
        out.push(Scalar::from_rational(r));
    }
    match qpoly::degree(&rest) {
        None | Some(0) => {}
        Some(2) => {
            let rest = qpoly::monic(&rest);
            let b = Scalar::from_rational(rest[1].clone());
            let c = Scalar::from_rational(rest[0].clone());
            let disc = b.try_mul(&b)?.try_sub(&c.scale(&q(4)))?;
            let r = disc.sqrt()?;
            let half = BigRational::new(1.into(), 2.into());
            out.push((-&b).try_add(&r)?.scale(&half));
            out.push((-&b).try_sub(&r)?.scale(&half));
        }
        Some(_) => {
            let n = root_count(&rest)?;
            for k in 0..n {
                out.push(indexed_root(&rest, k)?);
            }
        }
    }
    Ok(out)
}

fn sorted_disks(p: &[BigRational]) -> Result<Vec<CBall>, NumericError> {
    let mut disks = roots::isolate(p, ORDER_PREC)?;
    disks.sort_by(|a, b| (&a.re, &a.im).cmp(&(&b.re, &b.im)));
    Ok(disks)
}

fn root_count(p: &[BigRational]) -> Result<usize, NumericError> {
    Ok(qpoly::degree(p).unwrap_or(0).min(sorted_disks(p)?.len()))
}

/// The `k`-th root of the squarefree polynomial `p` in (real, imaginary)
/// midpoint order.
pub fn indexed_root(p: &[BigRational], k: usize) -> Result<Scalar, NumericError> {
    let p = qpoly::squarefree_part(p);
    let disks = sorted_disks(&p)?;
    let target = disks.get(k).cloned().ok_or(NumericError::Undecided(format!("root index {} out of range", k)))?;
    let ints = qpoly::to_primitive_int(&p);
    let lit = format!("root({}; {})", ints.iter().map(BigInt::to_string).collect::<Vec<_>>().join(", "), k);
    let built = context::build(p.clone(), lit, false, vec![], false, &|ds, _| {
        let hits: Vec<usize> = ds.iter().enumerate().filter(|(_, d)| d.overlaps(&target)).map(|(i, _)| i).collect();
        (hits.len() == 1).then(|| hits[0])
    })?;
    Ok(match built {
        Built::Field(ctx) => Scalar::generator(&ctx),
        Built::Rational(r) => Scalar::from_rational(r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_roots_satisfy_polynomial() {
        let p = qpoly::from_i64s(&[-1, -1, 0, 1]);
        let rs = roots_of(&p).unwrap();
        assert_eq!(rs.len(), 3);
        for r in &rs {
            let v = r.try_mul(r).unwrap().try_mul(r).unwrap().try_sub(r).unwrap().try_sub(&Scalar::one()).unwrap();
            assert!(v.is_zero());
        }
        assert!(rs[0].is_real() || rs[2].is_real());
    }

    #[test]
    fn mixed_factors() {
        // (x - 1)^2 (x^2 + 1)
        let p = qpoly::mul(&qpoly::from_i64s(&[1, -2, 1]), &qpoly::from_i64s(&[1, 0, 1]));
        let rs = roots_of(&p).unwrap();
        assert_eq!(rs.len(), 3);
        assert!(rs[0].is_one());
        assert!(rs[1].try_mul(&rs[1]).unwrap().eq_exact(&Scalar::from_int(-1)));
    }
}
