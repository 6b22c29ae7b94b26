//! Freeness of semigroups generated by Möbius maps: ping-pong certificates
//! over rational arcs and integer progressions, and relation search.

pub mod certify;
pub mod relations;
pub mod sets;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::numeric::NumericError;

pub use certify::{ping_pong_certify, CertifyOutcome, FreenessCertificate, ImageCheck, Violation};
pub use relations::{relation_search, relation_search_many, RelationWitness, Word};
pub use sets::{Arc, CirclePoint, Piece, PingPongSet, Progression};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FreenessError {
    #[error("sets {0} and {1} are not disjoint")]
    SetsNotDisjoint(usize, usize),
    #[error("unsupported map and set combination: {0}")]
    UnsupportedMapSetCombination(String),
    #[error("map coefficients must be rational")]
    NonRationalMap,
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Exact image of an arc; [`Arc::real_intervals`] splits it at ∞.
pub fn interval_image(m: &crate::algebra::Mobius, arc: &Arc) -> Result<Arc, FreenessError> {
    arc.image(m)
}
