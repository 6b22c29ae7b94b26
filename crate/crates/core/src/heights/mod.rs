//! Weil and canonical heights over ℚ and number fields.

pub mod dynamics;
pub mod mahler;

use thiserror::Error;

use crate::numeric::NumericError;

pub use dynamics::{
    canonical_height_estimate, compositional_power_check, difference_numerator, is_preperiodic, small_height_experiment, HeightReport, OrbitResult,
    OrbitVerdict, QMap,
};
pub use mahler::{height_from_poly, mahler_measure, rational_height, weil_height, CertifiedReal, IntPolynomial, MahlerMeasure, WeilHeight};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeightError {
    #[error("precision ceiling of {0} bits reached before certification")]
    PrecisionExhausted(u64),
    #[error("orbit reaches a pole at step {0}")]
    OrbitPole(u32),
    #[error("f^{0} - c vanishes identically: c is a compositional power of f")]
    CompositionalPowerDetected(u32),
    #[error("map must have rational coefficients")]
    NotRational,
    #[error("map must have degree at least 2")]
    DegreeTooSmall,
    #[error(transparent)]
    Numeric(NumericError),
}

impl From<NumericError> for HeightError {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::PrecisionExhausted(p) => HeightError::PrecisionExhausted(p),
            e => HeightError::Numeric(e),
        }
    }
}
