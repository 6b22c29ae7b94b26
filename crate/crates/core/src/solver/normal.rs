use std::fmt;

use crate::algebra::{AlgebraError, Mobius, ProjPoint};
use crate::numeric::Scalar;

use super::SolverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// Normal forms `αX` and `δX`.
    TwoSharedFixed,
    /// Normal forms `αX + β` and `δX + γ`.
    OneSharedFixed,
    /// Normal forms `αX + β` and `X/(γX + δ)` with `β, γ ≠ 0`.
    NoSharedFixed,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::TwoSharedFixed => "TwoSharedFixed",
            CaseTag::OneSharedFixed => "OneSharedFixed",
            CaseTag::NoSharedFixed => "NoSharedFixed",
        };
        write!(f, "{}", s)
    }
}

/// A pair conjugated by `conjugator` into one of the standard shapes.
#[derive(Clone, Debug)]
pub struct PairNormalForm {
    pub case: CaseTag,
    pub conjugator: Mobius,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
    /// `h f h⁻¹`
    pub f: Mobius,
    /// `h g h⁻¹`
    pub g: Mobius,
}

/// A map sending `to_inf` to ∞ and `to_zero` (if given) to 0.
fn mover(to_inf: &ProjPoint, to_zero: Option<&ProjPoint>) -> Result<Mobius, AlgebraError> {
    let (one, zero) = (Scalar::one(), Scalar::zero());
    match (to_inf, to_zero) {
        (ProjPoint::Infinity, None | Some(ProjPoint::Infinity)) => Ok(Mobius::identity()),
        (ProjPoint::Infinity, Some(ProjPoint::Affine(q))) => Mobius::new(one, -q, zero, Scalar::one()),
        (ProjPoint::Affine(p), Some(ProjPoint::Affine(q))) => Mobius::new(one.clone(), -q, one, -p),
        (ProjPoint::Affine(p), _) => Mobius::new(zero, one.clone(), one, -p),
    }
}

/// `m'(p)` at a fixed point `p`.
fn multiplier(m: &Mobius, p: &ProjPoint) -> Result<Scalar, SolverError> {
    Ok(match p {
        ProjPoint::Infinity => m.d().try_div(m.a())?,
        ProjPoint::Affine(x) => {
            let den = m.c().try_mul(x)?.try_add(m.d())?;
            m.det().try_div(&den.try_mul(&den)?)?
        }
    })
}

/// The fixed point with the smaller multiplier, so that the multiplier left
/// at the other one is the same in every coordinate system.
fn weaker_fixed_point(m: &Mobius, pts: &[ProjPoint]) -> Result<ProjPoint, SolverError> {
    if pts.len() == 2 && multiplier(m, &pts[1])?.cmp_embedded(&multiplier(m, &pts[0])?) == std::cmp::Ordering::Less {
        return Ok(pts[1].clone());
    }
    Ok(pts[0].clone())
}

fn shared_points(a: &[ProjPoint], b: &[ProjPoint]) -> Vec<ProjPoint> {
    a.iter().filter(|p| b.iter().any(|q| q.eq_exact(p))).cloned().collect()
}

/// Conjugate `f`, `g` into the standard shape for their shared fixed points.
pub fn normalize_pair(f: &Mobius, g: &Mobius) -> Result<PairNormalForm, SolverError> {
    if f.is_identity() || g.is_identity() {
        return Err(SolverError::IdentityInput);
    }
    let ff = f.fixed_points()?.points;
    let fg = g.fixed_points()?.points;
    let shared = shared_points(&ff, &fg);
    let (case, h) = match shared.len() {
        2 => (CaseTag::TwoSharedFixed, mover(&shared[0], Some(&shared[1]))?),
        1 => (CaseTag::OneSharedFixed, mover(&shared[0], None)?),
        _ => (CaseTag::NoSharedFixed, mover(&weaker_fixed_point(f, &ff)?, Some(&weaker_fixed_point(g, &fg)?))?),
    };
    let nf = f.conjugate(&h)?;
    let ng = g.conjugate(&h)?;
    let ratio = |num: &Scalar, den: &Scalar| num.try_div(den);
    let alpha = ratio(nf.a(), nf.d())?;
    let beta = ratio(nf.b(), nf.d())?;
    let (gamma, delta) = match case {
        CaseTag::NoSharedFixed => {
            // h g h⁻¹ = X/(cX + d) after canonical scaling of a to 1
            let a = ng.a();
            (ratio(ng.c(), a)?, ratio(ng.d(), a)?)
        }
        _ => (ratio(ng.b(), ng.d())?, ratio(ng.a(), ng.d())?),
    };
    Ok(PairNormalForm { case, conjugator: h, alpha, beta, gamma, delta, f: nf, g: ng })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mobius {
        Mobius::from_ints(a, b, c, d).unwrap()
    }

    #[test]
    fn two_shared() {
        let nf = normalize_pair(&m(2, -1, 0, 1), &m(3, -2, 0, 1)).unwrap();
        assert_eq!(nf.case, CaseTag::TwoSharedFixed);
        assert!(nf.alpha.eq_exact(&Scalar::from_int(2)));
        assert!(nf.delta.eq_exact(&Scalar::from_int(3)));
        assert!(nf.f.eq_exact(&m(2, 0, 0, 1)));
    }

    #[test]
    fn one_shared() {
        let nf = normalize_pair(&m(2, 1, 0, 1), &m(4, 0, 0, 1)).unwrap();
        assert_eq!(nf.case, CaseTag::OneSharedFixed);
        assert!(nf.conjugator.is_identity());
        assert!(nf.beta.is_one() && nf.gamma.is_zero());
        assert!(nf.delta.eq_exact(&Scalar::from_int(4)));
    }

    #[test]
    fn none_shared() {
        let nf = normalize_pair(&m(1, 2, 0, 1), &m(1, 0, 2, 1)).unwrap();
        assert_eq!(nf.case, CaseTag::NoSharedFixed);
        assert!(nf.alpha.is_one() && nf.delta.is_one());
        assert!(nf.beta.eq_exact(&Scalar::from_int(2)));
        assert!(nf.gamma.eq_exact(&Scalar::from_int(2)));
    }

    #[test]
    fn moved_shared_point() {
        // both fix 1 only (as shared point); f also fixes ∞, g fixes 3
        let f = m(2, -1, 0, 1);
        let g = m(1, 0, 1, -1).conjugate(&m(1, 0, 0, 1)).unwrap();
        let nf = normalize_pair(&f, &g);
        assert!(nf.is_ok());
        let nf = nf.unwrap();
        assert!(nf.f.c().is_zero() && nf.g.c().is_zero() || nf.case == CaseTag::NoSharedFixed);
    }
}
