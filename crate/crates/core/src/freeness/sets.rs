//! Open arcs of the real circle `ℝ ∪ {∞}` and integer progressions, with
//! exact images, inclusion and disjointness.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::Mobius;

use super::FreenessError;

/// A point of `ℝ ∪ {∞}` with rational coordinate; `None` is ∞.
pub type CirclePoint = Option<BigRational>;

/// The open arc swept from `lo` to `hi` in increasing direction, passing
/// through ∞ when `lo > hi`. `lo == hi` is the circle minus one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub lo: CirclePoint,
    pub hi: CirclePoint,
}

/// `{start + k·step : k ≥ 0}` with `step > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Progression {
    pub start: BigInt,
    pub step: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    Arc(Arc),
    Progression(Progression),
}

/// A finite union of pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PingPongSet {
    pub pieces: Vec<Piece>,
}

fn fmt_point(p: &CirclePoint) -> String {
    match p {
        None => "inf".into(),
        Some(v) => v.to_string(),
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_point(&self.lo), fmt_point(&self.hi))
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} + {}k}}", self.start, self.step)
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Arc(a) => write!(f, "{}", a),
            Piece::Progression(p) => write!(f, "{}", p),
        }
    }
}

/// Position along the circle when walking up from the cut point `b`.
/// `(0, _)` is `b` as a start, `(4, _)` is `b` as an end.
type Key = (u8, BigRational);

fn key(b: &CirclePoint, x: &CirclePoint, as_end: bool) -> Key {
    let z = BigRational::zero;
    if x == b {
        return if as_end { (4, z()) } else { (0, z()) };
    }
    match (b, x) {
        (None, Some(v)) => (1, v.clone()),
        (Some(_), None) => (2, z()),
        (Some(bv), Some(v)) => {
            if v > bv {
                (1, v.clone())
            } else {
                (3, v.clone())
            }
        }
        (None, None) => unreachable!(),
    }
}

/// Image of a circle point under a Möbius map with rational entries.
fn apply(m: &[BigRational; 4], x: &CirclePoint) -> CirclePoint {
    let [a, b, c, d] = m;
    match x {
        None => (!c.is_zero()).then(|| a / c),
        Some(v) => {
            let den = c * v + d;
            (!den.is_zero()).then(|| (a * v + b) / den)
        }
    }
}

pub(crate) fn rational_entries(m: &Mobius) -> Result<[BigRational; 4], FreenessError> {
    let e = m.entries();
    let mut out: [BigRational; 4] = Default::default();
    for (o, s) in out.iter_mut().zip(e) {
        *o = s.as_rational().ok_or(FreenessError::NonRationalMap)?;
    }
    Ok(out)
}

impl Arc {
    pub fn new(lo: CirclePoint, hi: CirclePoint) -> Self {
        Arc { lo, hi }
    }

    /// `(lo, hi)` with finite endpoints.
    pub fn finite(lo: i64, hi: i64) -> Self {
        Arc { lo: Some(BigRational::from_integer(lo.into())), hi: Some(BigRational::from_integer(hi.into())) }
    }

    pub fn contains_infinity(&self) -> bool {
        match (&self.lo, &self.hi) {
            (None, _) | (_, None) => false,
            (Some(l), Some(h)) => l >= h,
        }
    }

    pub fn contains_point(&self, x: &CirclePoint) -> bool {
        if x == &self.lo {
            return false;
        }
        key(&self.lo, x, false) < key(&self.lo, &self.hi, true)
    }

    /// Exact image; orientation flips with the sign of the determinant.
    pub fn image(&self, m: &Mobius) -> Result<Arc, FreenessError> {
        let e = rational_entries(m)?;
        let det = &e[0] * &e[3] - &e[1] * &e[2];
        let (lo, hi) = (apply(&e, &self.lo), apply(&e, &self.hi));
        Ok(if det.is_positive() { Arc { lo, hi } } else { Arc { lo: hi, hi: lo } })
    }

    pub fn is_subset(&self, o: &Arc) -> bool {
        let b = &o.lo;
        let start = key(b, &self.lo, false);
        let end = key(b, &self.hi, true);
        start < end && end <= key(b, &o.hi, true)
    }

    pub fn is_disjoint(&self, o: &Arc) -> bool {
        o.lo != o.hi && self.is_subset(&Arc { lo: o.hi.clone(), hi: o.lo.clone() })
    }

    /// The image split at ∞ into at most two real intervals, plus whether ∞
    /// itself is covered.
    pub fn real_intervals(&self) -> (Vec<(CirclePoint, CirclePoint)>, bool) {
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) if l >= h => (vec![(Some(l.clone()), None), (None, Some(h.clone()))], true),
            _ => (vec![(self.lo.clone(), self.hi.clone())], false),
        }
    }
}

impl Progression {
    pub fn new(start: BigInt, step: BigInt) -> Result<Self, FreenessError> {
        if !step.is_positive() {
            return Err(FreenessError::InvalidSet("progression step must be positive".into()));
        }
        Ok(Progression { start, step })
    }

    pub fn from_ints(start: i64, step: i64) -> Result<Self, FreenessError> {
        Progression::new(start.into(), step.into())
    }

    /// Image under `aX + b` with integers `a > 0`, `b`.
    pub fn image(&self, m: &Mobius) -> Result<Progression, FreenessError> {
        let e = rational_entries(m)?;
        let unsupported = || FreenessError::UnsupportedMapSetCombination(format!("{} on a progression", m));
        if !e[2].is_zero() {
            return Err(unsupported());
        }
        let a = &e[0] / &e[3];
        let b = &e[1] / &e[3];
        if !a.is_integer() || !b.is_integer() || !a.is_positive() {
            return Err(unsupported());
        }
        let (a, b) = (a.to_integer(), b.to_integer());
        Ok(Progression { start: &a * &self.start + b, step: a * &self.step })
    }

    pub fn is_subset(&self, o: &Progression) -> bool {
        self.step.is_multiple_of(&o.step) && (&self.start - &o.start).is_multiple_of(&o.step) && self.start >= o.start
    }

    pub fn is_disjoint(&self, o: &Progression) -> bool {
        !(&self.start - &o.start).is_multiple_of(&self.step.gcd(&o.step))
    }

    /// Real ray `(start − 1/2, ∞)` holding every element.
    fn hull(&self) -> Arc {
        let half = BigRational::new(BigInt::one(), 2.into());
        Arc { lo: Some(BigRational::from_integer(self.start.clone()) - half), hi: None }
    }
}

impl Piece {
    pub fn image(&self, m: &Mobius) -> Result<Piece, FreenessError> {
        Ok(match self {
            Piece::Arc(a) => Piece::Arc(a.image(m)?),
            Piece::Progression(p) => Piece::Progression(p.image(m)?),
        })
    }

    /// Exact for like pieces; a progression sits in an arc when the arc holds
    /// its whole ray, and an arc never sits in a progression.
    pub fn is_subset(&self, o: &Piece) -> bool {
        match (self, o) {
            (Piece::Arc(a), Piece::Arc(b)) => a.is_subset(b),
            (Piece::Progression(a), Piece::Progression(b)) => a.is_subset(b),
            (Piece::Progression(a), Piece::Arc(b)) => a.hull().is_subset(b),
            (Piece::Arc(_), Piece::Progression(_)) => false,
        }
    }

    /// Exact for like pieces; conservative (ray against arc) otherwise.
    pub fn is_disjoint(&self, o: &Piece) -> bool {
        match (self, o) {
            (Piece::Arc(a), Piece::Arc(b)) => a.is_disjoint(b),
            (Piece::Progression(a), Piece::Progression(b)) => a.is_disjoint(b),
            (Piece::Progression(p), Piece::Arc(a)) | (Piece::Arc(a), Piece::Progression(p)) => p.hull().is_disjoint(a),
        }
    }
}

impl PingPongSet {
    pub fn new(pieces: Vec<Piece>) -> Self {
        PingPongSet { pieces }
    }

    pub fn arc(lo: CirclePoint, hi: CirclePoint) -> Self {
        PingPongSet { pieces: vec![Piece::Arc(Arc::new(lo, hi))] }
    }

    pub fn progression(start: i64, step: i64) -> Result<Self, FreenessError> {
        Ok(PingPongSet { pieces: vec![Piece::Progression(Progression::from_ints(start, step)?)] })
    }

    /// Index of the first piece that holds `p`.
    pub fn holder(&self, p: &Piece) -> Option<usize> {
        self.pieces.iter().position(|q| p.is_subset(q))
    }

    pub fn is_disjoint(&self, o: &PingPongSet) -> bool {
        self.pieces.iter().all(|a| o.pieces.iter().all(|b| a.is_disjoint(b)))
    }

    pub fn pieces_disjoint(&self) -> bool {
        let n = self.pieces.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.pieces[i].is_disjoint(&self.pieces[j])))
    }
}

/// Do the arcs in `parts`, all inside `whole`, cover it up to finitely many points?
pub(crate) fn arcs_cover(whole: &Arc, parts: &[&Arc]) -> bool {
    let b = &whole.lo;
    let mut spans: Vec<(Key, Key)> = parts.iter().map(|a| (key(b, &a.lo, false), key(b, &a.hi, true))).collect();
    spans.sort();
    let target = key(b, &whole.hi, true);
    let mut reach = (0u8, BigRational::zero());
    for (s, e) in spans {
        if s.cmp(&reach) == Ordering::Greater {
            return false;
        }
        if e > reach {
            reach = e;
        }
    }
    reach >= target
}

/// Do the progressions in `parts`, all inside `whole`, cover all but
/// finitely many of its elements?
pub(crate) fn progressions_cover(whole: &Progression, parts: &[&Progression]) -> bool {
    let modulus = parts.iter().fold(whole.step.clone(), |acc, p| acc.lcm(&p.step));
    let count = (&modulus / &whole.step).to_string().parse::<u64>().unwrap_or(u64::MAX);
    if count > 1 << 20 {
        return false;
    }
    (0..count).all(|k| {
        let x = &whole.start + &whole.step * BigInt::from(k);
        parts.iter().any(|p| (&x - &p.start).is_multiple_of(&p.step))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> CirclePoint {
        Some(BigRational::from_integer(n.into()))
    }

    fn frac(n: i64, d: i64) -> CirclePoint {
        Some(BigRational::new(n.into(), d.into()))
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mobius {
        Mobius::from_ints(a, b, c, d).unwrap()
    }

    #[test]
    fn images() {
        let ray = Arc::new(r(1), None);
        assert_eq!(ray.image(&m(1, 2, 0, 1)).unwrap(), Arc::new(r(3), None));
        assert_eq!(ray.image(&m(1, 0, 2, 1)).unwrap(), Arc::new(frac(1, 3), frac(1, 2)));
        let w = Arc::finite(-1, 1).image(&m(0, 1, 1, 0)).unwrap();
        assert_eq!(w, Arc::new(r(1), r(-1)));
        assert!(w.contains_infinity());
        let (parts, inf) = w.real_intervals();
        assert_eq!(parts.len(), 2);
        assert!(inf);
    }

    #[test]
    fn inclusion_and_disjointness() {
        let ray = Arc::new(r(1), None);
        let unit = Arc::finite(0, 1);
        assert!(Arc::new(r(3), None).is_subset(&ray));
        assert!(Arc::new(frac(1, 3), frac(1, 2)).is_subset(&unit));
        assert!(ray.is_disjoint(&unit));
        assert!(!ray.is_subset(&unit));
        let wrap = Arc::new(r(1), r(-1));
        assert!(Arc::new(r(2), None).is_subset(&wrap));
        assert!(Arc::new(None, r(-3)).is_subset(&wrap));
        assert!(!Arc::finite(0, 2).is_subset(&wrap));
        assert!(wrap.is_disjoint(&Arc::finite(-1, 1)));
        assert!(!wrap.is_disjoint(&Arc::finite(0, 2)));
        assert!(wrap.is_subset(&wrap));
    }

    #[test]
    fn point_membership() {
        let wrap = Arc::new(r(1), r(-1));
        assert!(wrap.contains_point(&None));
        assert!(wrap.contains_point(&r(5)));
        assert!(!wrap.contains_point(&r(0)));
        assert!(!wrap.contains_point(&r(1)));
    }

    #[test]
    fn progressions() {
        let odd = Progression::from_ints(1, 2).unwrap();
        let even = Progression::from_ints(2, 2).unwrap();
        assert!(odd.is_disjoint(&even));
        let im = odd.image(&m(2, 1, 0, 1)).unwrap();
        assert_eq!(im, Progression::from_ints(3, 4).unwrap());
        assert!(im.is_subset(&odd));
        assert!(even.image(&m(4, 0, 0, 1)).unwrap().is_subset(&even));
        assert!(odd.image(&m(1, 0, 2, 1)).is_err());
        assert!(odd.image(&m(-1, 0, 0, 1)).is_err());
    }

    #[test]
    fn coverage() {
        let ray = Arc::new(r(1), None);
        assert!(arcs_cover(&ray, &[&Arc::new(r(1), r(3)), &Arc::new(r(3), None)]));
        assert!(!arcs_cover(&ray, &[&Arc::new(r(1), r(3)), &Arc::new(r(4), None)]));
        let odd = Progression::from_ints(1, 2).unwrap();
        let a = Progression::from_ints(3, 4).unwrap();
        let b = Progression::from_ints(5, 4).unwrap();
        assert!(progressions_cover(&odd, &[&a, &b]));
        assert!(!progressions_cover(&odd, &[&a]));
    }
}
