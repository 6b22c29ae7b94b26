use std::cmp::Ordering;
use std::fmt;

use crate::numeric::Scalar;

/// A point of P¹ over the algebraic numbers.
#[derive(Clone, Debug)]
pub enum ProjPoint {
    Infinity,
    Affine(Scalar),
}

impl ProjPoint {
    pub fn affine(s: Scalar) -> Self {
        ProjPoint::Affine(s)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn value(&self) -> Option<&Scalar> {
        match self {
            ProjPoint::Affine(s) => Some(s),
            ProjPoint::Infinity => None,
        }
    }

    pub fn eq_exact(&self, o: &ProjPoint) -> bool {
        match (self, o) {
            (ProjPoint::Infinity, ProjPoint::Infinity) => true,
            (ProjPoint::Affine(a), ProjPoint::Affine(b)) => a.eq_exact(b),
            _ => false,
        }
    }

    /// Infinity first, then affine points by (real, imaginary) part of the embedding.
    pub fn cmp_order(&self, o: &ProjPoint) -> Ordering {
        match (self, o) {
            (ProjPoint::Infinity, ProjPoint::Infinity) => Ordering::Equal,
            (ProjPoint::Infinity, _) => Ordering::Less,
            (_, ProjPoint::Infinity) => Ordering::Greater,
            (ProjPoint::Affine(a), ProjPoint::Affine(b)) => a.cmp_embedded(b),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Infinity => write!(f, "inf"),
            ProjPoint::Affine(s) => write!(f, "{}", s),
        }
    }
}

/// Sort and remove exact duplicates.
pub fn sort_dedup(points: &mut Vec<ProjPoint>) {
    points.sort_by(|a, b| a.cmp_order(b));
    let mut out: Vec<ProjPoint> = vec![];
    for p in points.drain(..) {
        if !out.last().is_some_and(|q| q.eq_exact(&p)) {
            out.push(p);
        }
    }
    *points = out;
}
