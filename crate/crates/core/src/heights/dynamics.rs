//! Canonical heights, preperiodicity and the small-height experiment for
//! rational maps over ℚ.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::RationalFunction;
use crate::numeric::qpoly::{self, QPoly};

use super::mahler::{ln_bigint, mahler_measure, rational_height, CertifiedReal, IntPolynomial};
use super::HeightError;

/// A rational map over ℚ as a pair of rational polynomials.
#[derive(Clone, Debug)]
pub struct QMap {
    num: QPoly,
    den: QPoly,
    degree: usize,
}

impl QMap {
    pub fn new(f: &RationalFunction) -> Result<Self, HeightError> {
        let num = f.num().to_qpoly().ok_or(HeightError::NotRational)?;
        let den = f.den().to_qpoly().ok_or(HeightError::NotRational)?;
        Ok(QMap { num, den, degree: f.degree() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Image of a point of `P¹(ℚ)`; `None` is ∞.
    pub fn apply(&self, x: &Option<BigRational>) -> Option<BigRational> {
        match x {
            Some(v) => {
                let d = qpoly::eval(&self.den, v);
                if d.is_zero() {
                    return None;
                }
                Some(qpoly::eval(&self.num, v) / d)
            }
            None => {
                let (dn, dd) = (qpoly::degree(&self.num).unwrap_or(0), qpoly::degree(&self.den).unwrap_or(0));
                if qpoly::is_zero(&self.num) || dn < dd {
                    Some(BigRational::zero())
                } else if dn > dd {
                    None
                } else {
                    Some(qpoly::lead(&self.num) / qpoly::lead(&self.den))
                }
            }
        }
    }

    /// Constant `C` with `|ĥ − h| ≤ C` on `P¹(ℚ̄)`, from the sizes of the
    /// integer coefficients of one application of the map.
    pub fn height_constant(&self) -> f64 {
        let d = self.degree as f64;
        let mut both = self.num.clone();
        both.extend(self.den.iter().cloned());
        let ints = qpoly::to_primitive_int(&both);
        let h = ints.iter().filter(|c| !c.is_zero()).map(|c| ln_bigint(c).hi()).fold(0.0, f64::max);
        // h(f(x)) ≤ d h(x) + log((d + 1) H)
        let upper = ((d + 1.0).ln()) + h;
        // d h(x) ≤ h(f(x)) + log(2d) + (2d − 1) log(√(d + 1) H)
        let lower = (2.0 * d).ln() + (2.0 * d - 1.0) * (0.5 * (d + 1.0).ln() + h);
        upper.max(lower) / (d - 1.0)
    }
}

fn point_height(x: &Option<BigRational>) -> CertifiedReal {
    match x {
        None => CertifiedReal::exact(0.0),
        Some(v) => rational_height(v),
    }
}

/// `h(f^N(x))/d^N` with error `C/d^N`.
pub fn canonical_height_estimate(f: &RationalFunction, x: &BigRational, big_n: u32) -> Result<CertifiedReal, HeightError> {
    let m = QMap::new(f)?;
    if m.degree < 2 {
        return Err(HeightError::DegreeTooSmall);
    }
    let mut cur = Some(x.clone());
    for k in 1..=big_n {
        cur = m.apply(&cur);
        if cur.is_none() {
            return Err(HeightError::OrbitPole(k));
        }
    }
    let scale = (m.degree as f64).powi(big_n as i32);
    let h = point_height(&cur);
    Ok(CertifiedReal { value: h.value / scale, error: (m.height_constant() + h.error) / scale })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitVerdict {
    Preperiodic { tail: usize, cycle: usize },
    EscapedHeightBound,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct OrbitResult {
    pub verdict: OrbitVerdict,
    /// `x, f(x), …` up to the deciding step; `None` is ∞.
    pub orbit: Vec<Option<BigRational>>,
    pub height_bound: f64,
}

/// Iterate until a point repeats or the naive height passes `height_bound`
/// (default `h(x) + 2C + log 2`).
pub fn is_preperiodic(
    f: &RationalFunction,
    x: &Option<BigRational>,
    max_steps: usize,
    height_bound: Option<f64>,
) -> Result<OrbitResult, HeightError> {
    let m = QMap::new(f)?;
    if m.degree < 2 {
        return Err(HeightError::DegreeTooSmall);
    }
    let bound = height_bound.unwrap_or_else(|| point_height(x).hi() + 2.0 * m.height_constant() + std::f64::consts::LN_2);
    let mut seen: HashMap<Option<BigRational>, usize> = HashMap::new();
    let mut orbit = vec![];
    let mut cur = x.clone();
    for step in 0..=max_steps {
        if let Some(&first) = seen.get(&cur) {
            orbit.push(cur);
            return Ok(OrbitResult { verdict: OrbitVerdict::Preperiodic { tail: first, cycle: step - first }, orbit, height_bound: bound });
        }
        if point_height(&cur).lo() > bound {
            orbit.push(cur);
            return Ok(OrbitResult { verdict: OrbitVerdict::EscapedHeightBound, orbit, height_bound: bound });
        }
        seen.insert(cur.clone(), step);
        orbit.push(cur.clone());
        cur = m.apply(&cur);
    }
    Ok(OrbitResult { verdict: OrbitVerdict::Undecided, orbit, height_bound: bound })
}

#[derive(Clone, Debug)]
pub struct HeightReport {
    pub n: u32,
    pub degree: usize,
    /// `M(Pₙ)`
    pub mahler: f64,
    /// `log M(Pₙ)/deg Pₙ`
    pub avg_height: f64,
    /// Certified bound on the error of `avg_height`.
    pub error: f64,
    /// `avg_height · dⁿ`
    pub bound_ratio: f64,
    pub poly: IntPolynomial,
}

/// Smallest `n ≤ max_n` with `c = fⁿ`.
pub fn compositional_power_check(c: &RationalFunction, f: &RationalFunction, max_n: usize) -> Result<Option<usize>, HeightError> {
    let (dc, df) = (c.degree(), f.degree());
    let mut it = RationalFunction::identity();
    let mut deg = 1usize;
    for n in 1..=max_n {
        deg = match deg.checked_mul(df) {
            Some(d) if d <= dc => d,
            _ => return Ok(None),
        };
        it = f.compose(&it)?;
        if deg == dc && it.eq_exact(c) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Primitive integer numerator of `fⁿ − c`.
pub fn difference_numerator(f: &RationalFunction, c: &RationalFunction, n: u32) -> Result<IntPolynomial, HeightError> {
    let fnn = f.iterate(n as usize)?;
    let diff = fnn.try_sub(c)?;
    if diff.num().is_zero() {
        return Err(HeightError::CompositionalPowerDetected(n));
    }
    let q = diff.num().to_qpoly().ok_or(HeightError::NotRational)?;
    IntPolynomial::from_qpoly(&q)
}

/// Reports for `n` in `n_from..=n_to`, computed in parallel and ordered by `n`.
pub fn small_height_experiment(
    f: &RationalFunction,
    c: &RationalFunction,
    n_from: u32,
    n_to: u32,
    precision: u64,
) -> Result<Vec<HeightReport>, HeightError> {
    let m = QMap::new(f)?;
    QMap::new(c)?;
    if m.degree < 2 {
        return Err(HeightError::DegreeTooSmall);
    }
    let d = m.degree as f64;
    let reports: Vec<Result<HeightReport, HeightError>> = (n_from.max(1)..=n_to)
        .into_par_iter()
        .map(|n| {
            let p = difference_numerator(f, c, n)?;
            let deg = p.degree();
            if deg == 0 {
                // no affine roots at all
                return Ok(HeightReport { n, degree: 0, mahler: 1.0, avg_height: 0.0, error: 0.0, bound_ratio: 0.0, poly: p });
            }
            let mm = mahler_measure(&p, precision)?;
            let avg = mm.log.scale(1.0 / deg as f64);
            Ok(HeightReport {
                n,
                degree: deg,
                mahler: mm.value(),
                avg_height: avg.value,
                error: avg.error,
                bound_ratio: avg.value * d.powi(n as i32),
                poly: p,
            })
        })
        .collect();
    reports.into_iter().collect()
}
