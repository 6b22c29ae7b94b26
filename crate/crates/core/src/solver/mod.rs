//! Equalizers of iterated Möbius maps and their common solutions with a
//! target rational function.

pub mod classify;
pub mod conjunction;
pub mod equalizer;
pub mod families;
pub mod normal;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::numeric::NumericError;

pub use classify::{classify_pair, Classification, Family, TestedQuantity};
pub use conjunction::{conjunction_solve, enumerate_solutions, Branch, Conjunction, Enumeration, SolutionRecord};
pub use equalizer::{closed_form_equalizer, generic_equalizer, EqualizerPoint};
pub use families::{family_generate, family_verify, FamilyId, FamilyInstance, FamilyReport};
pub use normal::{normalize_pair, CaseTag, PairNormalForm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("identity map given where a non-identity automorphism is required")]
    IdentityInput,
    #[error("f^n and g^n coincide as maps")]
    DegenerateEqualizer,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("closed form and generic equalizer disagree at n = {0}")]
    CrossCheckFailed(u64),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Algebra(AlgebraError),
}

impl From<AlgebraError> for SolverError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::IdentityInput => SolverError::IdentityInput,
            AlgebraError::Numeric(n) => SolverError::Numeric(n),
            e => SolverError::Algebra(e),
        }
    }
}
