//! Common solutions of `fⁿ(λ) = gⁿ(λ) = c(λ)`.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{sort_dedup, Mobius, Polynomial, ProjPoint, RationalFunction};

use super::equalizer::closed_form_equalizer;
use super::normal::normalize_pair;
use super::SolverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
    Linear,
    /// `fⁿ = gⁿ` as maps; the point solves `c = fⁿ`.
    Degenerate,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
            Branch::Linear => "linear",
            Branch::Degenerate => "degenerate",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug)]
pub struct SolutionRecord {
    pub n: u64,
    pub point: ProjPoint,
    /// `fⁿ(point) = gⁿ(point) = c(point)` was re-checked exactly.
    pub verified: bool,
    pub branch: Branch,
}

#[derive(Clone, Debug, Default)]
pub struct Conjunction {
    /// Affine solutions, sorted.
    pub records: Vec<SolutionRecord>,
    /// Solutions at ∞, kept apart from the affine count.
    pub at_infinity: Vec<SolutionRecord>,
    /// `fⁿ = gⁿ` as maps.
    pub degenerate: bool,
}

fn check(fnn: &Mobius, gnn: &Mobius, c: &RationalFunction, p: &ProjPoint) -> Result<bool, SolverError> {
    let a = fnn.apply(p)?;
    let b = gnn.apply(p)?;
    if !a.eq_exact(&b) {
        return Ok(false);
    }
    Ok(c.eval(p)?.eq_exact(&a))
}

/// Roots in P¹ of `c(X) = m(X)`; `None` when the two agree identically.
fn solve_against_map(m: &Mobius, c: &RationalFunction) -> Result<Option<Vec<ProjPoint>>, SolverError> {
    // P(cX + d) − Q(aX + b) with c = P/Q
    let lin_num = Polynomial::linear(m.a().clone(), m.b().clone());
    let lin_den = Polynomial::linear(m.c().clone(), m.d().clone());
    let poly = c.num().try_mul(&lin_den)?.try_sub(&c.den().try_mul(&lin_num)?)?;
    if poly.is_zero() {
        return Ok(None);
    }
    let mut out: Vec<ProjPoint> = match poly.degree() {
        Some(0) | None => vec![],
        _ => poly.roots()?.into_iter().map(ProjPoint::Affine).collect(),
    };
    out.push(ProjPoint::Infinity);
    sort_dedup(&mut out);
    Ok(Some(out))
}

/// All `λ ∈ P¹` with `fⁿ(λ) = gⁿ(λ) = c(λ)`, each verified in the original
/// coordinates.
pub fn conjunction_solve(f: &Mobius, g: &Mobius, c: &RationalFunction, n: u64) -> Result<Conjunction, SolverError> {
    if n == 0 {
        return Err(SolverError::HypothesisViolated("n must be positive".into()));
    }
    let fnn = f.iterate(n)?;
    let gnn = g.iterate(n)?;
    let mut candidates: Vec<(ProjPoint, Branch)> = vec![];
    let mut degenerate = false;
    if fnn.eq_exact(&gnn) {
        degenerate = true;
        let pts = solve_against_map(&fnn, c)?.ok_or(SolverError::DegenerateEqualizer)?;
        candidates.extend(pts.into_iter().map(|p| (p, Branch::Degenerate)));
    } else {
        let nf = normalize_pair(f, g)?;
        let back = nf.conjugator.inverse()?;
        for ep in closed_form_equalizer(&nf, n)? {
            candidates.push((back.apply(&ep.point)?, ep.branch));
        }
    }
    let mut out = Conjunction { degenerate, ..Default::default() };
    for (p, branch) in candidates {
        if !check(&fnn, &gnn, c, &p)? {
            continue;
        }
        let rec = SolutionRecord { n, point: p, verified: true, branch };
        let list = if rec.point.is_infinity() { &mut out.at_infinity } else { &mut out.records };
        if !list.iter().any(|r| r.point.eq_exact(&rec.point)) {
            list.push(rec);
        }
    }
    out.records.sort_by(|a, b| a.point.cmp_order(&b.point));
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    /// Affine solutions over all `n`, sorted by `(n, point)`.
    pub records: Vec<SolutionRecord>,
    pub at_infinity: Vec<SolutionRecord>,
    /// Exponents with `fⁿ = gⁿ`.
    pub degenerate_n: Vec<u64>,
}

impl Enumeration {
    /// Distinct affine points among the records with exponent at most `n`.
    pub fn distinct_up_to(&self, n: u64) -> usize {
        let mut pts: Vec<ProjPoint> = self.records.iter().filter(|r| r.n <= n).map(|r| r.point.clone()).collect();
        sort_dedup(&mut pts);
        pts.len()
    }
}

/// [`conjunction_solve`] for `n = 1..=big_n`, evaluated in parallel and
/// merged in `(n, point)` order.
pub fn enumerate_solutions(f: &Mobius, g: &Mobius, c: &RationalFunction, big_n: u64) -> Result<Enumeration, SolverError> {
    let parts: Vec<Result<Conjunction, SolverError>> = (1..=big_n).into_par_iter().map(|n| conjunction_solve(f, g, c, n)).collect();
    let mut out = Enumeration::default();
    for (i, part) in parts.into_iter().enumerate() {
        let part = match part {
            Ok(p) => p,
            // fⁿ = gⁿ = c: every point is a solution; report the exponent only
            Err(SolverError::DegenerateEqualizer) if f.iterate(i as u64 + 1)?.eq_exact(&g.iterate(i as u64 + 1)?) => {
                out.degenerate_n.push(i as u64 + 1);
                continue;
            }
            Err(e) => return Err(e),
        };
        if part.degenerate {
            out.degenerate_n.push(i as u64 + 1);
        }
        out.records.extend(part.records);
        out.at_infinity.extend(part.at_infinity);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Scalar;
    use crate::parse::parse_ratfun;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mobius {
        Mobius::from_ints(a, b, c, d).unwrap()
    }

    fn rf(s: &str) -> RationalFunction {
        parse_ratfun(s).unwrap()
    }

    #[test]
    fn double_root_solution() {
        let r = conjunction_solve(&m(1, 2, 0, 1), &m(1, 0, 2, 1), &rf("-1/X"), 1).unwrap();
        assert_eq!(r.records.len(), 1);
        assert!(r.records[0].point.eq_exact(&ProjPoint::Affine(Scalar::from_int(-1))));
        assert!(r.records[0].verified);
    }

    #[test]
    fn power_of_two_solution() {
        let r = conjunction_solve(&m(2, 1, 0, 1), &m(4, 0, 0, 1), &rf("1/X"), 3).unwrap();
        assert_eq!(r.records.len(), 1);
        assert!(r.records[0].point.eq_exact(&ProjPoint::Affine(Scalar::frac(1, 8))));
    }

    #[test]
    fn scalings_have_no_solution() {
        let e = enumerate_solutions(&m(2, 0, 0, 1), &m(3, 0, 0, 1), &rf("X + 1"), 50).unwrap();
        assert!(e.records.is_empty());
        // ∞ is common to all three
        assert_eq!(e.at_infinity.len(), 50);
    }

    #[test]
    fn equal_maps_are_flagged() {
        let f = m(2, 1, 0, 1);
        let e = enumerate_solutions(&f, &f, &rf("X^2"), 3).unwrap();
        assert_eq!(e.degenerate_n, vec![1, 2, 3]);
        assert!(e.records.iter().all(|r| r.branch == Branch::Degenerate && r.verified));
        // X² = 2X + 1 has two roots
        assert_eq!(e.records.iter().filter(|r| r.n == 1).count(), 2);
    }

    #[test]
    fn original_coordinates_after_conjugation() {
        let h = m(1, 1, 1, 2);
        let f = m(1, 2, 0, 1).conjugate(&h).unwrap();
        let g = m(1, 0, 2, 1).conjugate(&h).unwrap();
        // c = h ∘ (−1/X) ∘ h⁻¹, so λ = h(−1)
        let hr = h.to_ratfun();
        let hi = h.inverse().unwrap().to_ratfun();
        let c = hr.compose(&rf("-1/X")).unwrap().compose(&hi).unwrap();
        let r = conjunction_solve(&f, &g, &c, 1).unwrap();
        let want = h.apply(&ProjPoint::Affine(Scalar::from_int(-1))).unwrap();
        assert_eq!(r.records.len(), 1);
        assert!(r.records[0].point.eq_exact(&want));
    }
}
