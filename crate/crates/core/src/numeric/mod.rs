//! Exact arithmetic over ℚ and dynamically extended number fields.

pub mod algroots;
pub mod context;
pub mod dyadic;
pub mod error;
pub mod linalg;
pub mod qpoly;
pub mod roots;
pub mod scalar;

pub use context::{Ctx, FieldContext};
pub use dyadic::{CBall, Dyadic};
pub use error::NumericError;
pub use scalar::{mult_dependence, Scalar};
