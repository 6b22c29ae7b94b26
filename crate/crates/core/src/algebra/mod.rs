//! Exact polynomials, rational maps and Möbius transformations over the
//! algebraic scalars of [`crate::numeric`].

pub mod mobius;
pub mod point;
pub mod poly;
pub mod ratfun;

pub use mobius::{FixedPoints, Mobius};
pub use point::{sort_dedup, ProjPoint};
pub use poly::{is_compound, Polynomial};
pub use ratfun::RationalFunction;

use crate::numeric::NumericError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("singular matrix: determinant is zero")]
    Singular,
    #[error("the identity map has no isolated fixed points")]
    IdentityInput,
}
