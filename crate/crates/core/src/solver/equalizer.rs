//! Solutions of `fⁿ(X) = gⁿ(X)`.

use num_rational::BigRational;

use crate::algebra::{sort_dedup, Mobius, Polynomial, ProjPoint};
use crate::numeric::Scalar;

use super::conjunction::Branch;
use super::normal::{CaseTag, PairNormalForm};
use super::SolverError;

#[derive(Clone, Debug)]
pub struct EqualizerPoint {
    pub point: ProjPoint,
    pub branch: Branch,
}

/// `1 + x + … + x^(n−1)`
pub(crate) fn geometric_sum(x: &Scalar, n: u64) -> Result<Scalar, SolverError> {
    if x.is_one() {
        return Ok(Scalar::from_int(n as i64));
    }
    let one = Scalar::one();
    Ok(one.try_sub(&x.pow(n as i64)?)?.try_div(&one.try_sub(x)?)?)
}

/// Roots of `a X² + t X + c₀` in P¹, labelled by branch. `None` when the
/// form vanishes identically.
fn quadratic_points(a: &Scalar, t: &Scalar, c0: &Scalar) -> Result<Option<Vec<EqualizerPoint>>, SolverError> {
    let pt = |s: Scalar, branch| EqualizerPoint { point: ProjPoint::Affine(s), branch };
    if a.is_zero() {
        let mut out = vec![EqualizerPoint { point: ProjPoint::Infinity, branch: Branch::Linear }];
        if !t.is_zero() {
            out.push(pt(-&c0.try_div(t)?, Branch::Linear));
        } else if c0.is_zero() {
            return Ok(None);
        }
        return Ok(Some(out));
    }
    let disc = t.try_mul(t)?.try_sub(&a.try_mul(c0)?.scale(&BigRational::from_integer(4.into())))?;
    let two_a = a.scale(&BigRational::from_integer(2.into()));
    let mt = -t;
    if disc.is_zero() {
        return Ok(Some(vec![pt(mt.try_div(&two_a)?, Branch::Plus)]));
    }
    let r = disc.sqrt()?;
    Ok(Some(vec![pt(mt.try_add(&r)?.try_div(&two_a)?, Branch::Plus), pt(mt.try_sub(&r)?.try_div(&two_a)?, Branch::Minus)]))
}

/// Closed-form solution set in the normalized coordinates of `nf`,
/// cross-checked against [`generic_equalizer`] on the normalized maps.
pub fn closed_form_equalizer(nf: &PairNormalForm, n: u64) -> Result<Vec<EqualizerPoint>, SolverError> {
    if n == 0 {
        return Err(SolverError::HypothesisViolated("n must be positive".into()));
    }
    let (al, be, ga, de) = (&nf.alpha, &nf.beta, &nf.gamma, &nf.delta);
    let an = al.pow(n as i64)?;
    let dn = de.pow(n as i64)?;
    let pts = match nf.case {
        CaseTag::NoSharedFixed => {
            // fⁿ = AX + B, gⁿ = X/(CX + D)
            let b = be.try_mul(&geometric_sum(al, n)?)?;
            let c = ga.try_mul(&geometric_sum(de, n)?)?;
            let qa = an.try_mul(&c)?;
            let qt = b.try_mul(&c)?.try_add(&an.try_mul(&dn)?)?.try_sub(&Scalar::one())?;
            let qc = b.try_mul(&dn)?;
            quadratic_points(&qa, &qt, &qc)?.ok_or(SolverError::DegenerateEqualizer)?
        }
        CaseTag::OneSharedFixed => {
            let rhs = ga.try_mul(&geometric_sum(de, n)?)?.try_sub(&be.try_mul(&geometric_sum(al, n)?)?)?;
            let lhs = an.try_sub(&dn)?;
            let mut out = vec![EqualizerPoint { point: ProjPoint::Infinity, branch: Branch::Linear }];
            if !lhs.is_zero() {
                out.push(EqualizerPoint { point: ProjPoint::Affine(rhs.try_div(&lhs)?), branch: Branch::Linear });
            } else if rhs.is_zero() {
                return Err(SolverError::DegenerateEqualizer);
            }
            out
        }
        CaseTag::TwoSharedFixed => {
            if an.eq_exact(&dn) {
                return Err(SolverError::DegenerateEqualizer);
            }
            vec![
                EqualizerPoint { point: ProjPoint::Infinity, branch: Branch::Linear },
                EqualizerPoint { point: ProjPoint::Affine(Scalar::zero()), branch: Branch::Linear },
            ]
        }
    };
    let mut closed: Vec<ProjPoint> = pts.iter().map(|p| p.point.clone()).collect();
    sort_dedup(&mut closed);
    let generic = generic_equalizer(&nf.f, &nf.g, n)?;
    if closed.len() != generic.len() || !closed.iter().zip(&generic).all(|(a, b)| a.eq_exact(b)) {
        return Err(SolverError::CrossCheckFailed(n));
    }
    Ok(pts)
}

/// Solution set of `fⁿ = gⁿ` from the binary quadratic
/// `(a₁X + b₁)(c₂X + d₂) − (a₂X + b₂)(c₁X + d₁)`, sorted.
pub fn generic_equalizer(f: &Mobius, g: &Mobius, n: u64) -> Result<Vec<ProjPoint>, SolverError> {
    let fi = f.iterate(n)?;
    let gi = g.iterate(n)?;
    let (a1, b1, c1, d1) = (fi.a(), fi.b(), fi.c(), fi.d());
    let (a2, b2, c2, d2) = (gi.a(), gi.b(), gi.c(), gi.d());
    let m = |x: &Scalar, y: &Scalar| x.try_mul(y);
    let q2 = m(a1, c2)?.try_sub(&m(a2, c1)?)?;
    let q1 = m(a1, d2)?.try_add(&m(b1, c2)?)?.try_sub(&m(a2, d1)?)?.try_sub(&m(b2, c1)?)?;
    let q0 = m(b1, d2)?.try_sub(&m(b2, d1)?)?;
    let poly = Polynomial::new(vec![q0, q1, q2.clone()]);
    if poly.is_zero() {
        return Err(SolverError::DegenerateEqualizer);
    }
    let mut out: Vec<ProjPoint> = if poly.degree() == Some(0) { vec![] } else { poly.roots()?.into_iter().map(ProjPoint::Affine).collect() };
    if q2.is_zero() {
        out.push(ProjPoint::Infinity);
    }
    sort_dedup(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::normal::normalize_pair;
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mobius {
        Mobius::from_ints(a, b, c, d).unwrap()
    }

    fn points(f: &Mobius, g: &Mobius, n: u64) -> Vec<ProjPoint> {
        let nf = normalize_pair(f, g).unwrap();
        let mut v: Vec<ProjPoint> = closed_form_equalizer(&nf, n).unwrap().into_iter().map(|p| p.point).collect();
        sort_dedup(&mut v);
        v
    }

    #[test]
    fn double_root() {
        // (X + 2)(2X + 1) − X = 2(X + 1)²
        let nf = normalize_pair(&m(1, 2, 0, 1), &m(1, 0, 2, 1)).unwrap();
        let pts = closed_form_equalizer(&nf, 1).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].point.eq_exact(&ProjPoint::Affine(Scalar::from_int(-1))));
    }

    #[test]
    fn one_shared_adds_infinity() {
        let v = points(&m(2, 1, 0, 1), &m(4, 0, 0, 1), 1);
        assert_eq!(v.len(), 2);
        assert!(v[0].is_infinity());
        assert!(v[1].eq_exact(&ProjPoint::Affine(Scalar::frac(1, 2))));
    }

    #[test]
    fn scalings() {
        for n in 1..5 {
            let v = points(&m(2, 0, 0, 1), &m(3, 0, 0, 1), n);
            assert_eq!(v.len(), 2);
            assert!(v[0].is_infinity() && v[1].value().unwrap().is_zero());
        }
    }

    #[test]
    fn degenerate_powers() {
        let nf = normalize_pair(&m(2, 0, 0, 1), &m(-2, 0, 0, 1)).unwrap();
        assert!(closed_form_equalizer(&nf, 1).is_ok());
        assert_eq!(closed_form_equalizer(&nf, 2).unwrap_err(), SolverError::DegenerateEqualizer);
    }

    #[test]
    fn generic_matches_hand_expansion() {
        // 2X + 1 = X/(X + 1)  ⇔  2X² + 2X + 1 = 0
        let v = generic_equalizer(&m(2, 1, 0, 1), &m(1, 0, 1, 1), 1).unwrap();
        assert_eq!(v.len(), 2);
        for p in &v {
            let x = p.value().unwrap();
            let val = x
                .try_mul(x)
                .unwrap()
                .scale(&BigRational::from_integer(2.into()))
                .try_add(&x.scale(&BigRational::from_integer(2.into())))
                .unwrap()
                .try_add(&Scalar::one())
                .unwrap();
            assert!(val.is_zero());
        }
    }

    #[test]
    fn closed_form_in_moved_coordinates() {
        // a scaling and a translation sharing ∞, moved by a non-affine h
        let h = m(1, 1, 1, 2);
        let f = m(3, 0, 0, 1).conjugate(&h).unwrap();
        let g = m(1, 1, 0, 1).conjugate(&h).unwrap();
        for n in 1..6 {
            let nf = normalize_pair(&f, &g).unwrap();
            closed_form_equalizer(&nf, n).unwrap();
        }
    }
}
