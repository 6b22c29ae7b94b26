//! Truncated Puiseux series with exact coefficients and the equalizer
//! branch expansions.

pub mod branches;
pub mod series;

pub use branches::{expand_equalizer_branches, BranchExpansion, BranchReport};
pub use series::Series;

use crate::numeric::NumericError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PuiseuxError {
    #[error("series has no nonzero leading term")]
    ZeroLeadingTerm,
    #[error("series is zero to its stored order")]
    ZeroToStoredOrder,
    #[error("the maps share a fixed point")]
    SharedFixedPoint,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}
