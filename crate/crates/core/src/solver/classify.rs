//! Which exceptional family, if any, a pair of maps belongs to.

use std::fmt;

use crate::algebra::Mobius;
use crate::numeric::Scalar;

use super::normal::{normalize_pair, CaseTag};
use super::SolverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// No shared fixed point, `α/δ` or `αδ` a root of unity.
    Exceptional1,
    /// One shared fixed point, `α/δ` (≠ 1), `α²/δ` or `δ²/α` a root of unity.
    Exceptional2,
    NonExceptional,
    /// An evident relation: equal maps, a map of finite order, or a commuting pair.
    TrivialNonFree,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Exceptional1 => "Exceptional1",
            Family::Exceptional2 => "Exceptional2",
            Family::NonExceptional => "NonExceptional",
            Family::TrivialNonFree => "TrivialNonFree",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug)]
pub struct TestedQuantity {
    pub quantity: String,
    pub value: Scalar,
    /// Order if a root of unity.
    pub order: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub family: Family,
    pub case: Option<CaseTag>,
    /// The quantity that decided the verdict and its order, when there is one.
    pub witness: Option<(String, u64)>,
    /// Human-readable reason for [`Family::TrivialNonFree`].
    pub reason: Option<String>,
    pub tested: Vec<TestedQuantity>,
}

fn test(name: &str, value: Scalar) -> TestedQuantity {
    let order = value.is_root_of_unity();
    TestedQuantity { quantity: name.to_string(), value, order }
}

/// Classify `(f, g)` up to simultaneous conjugation.
///
/// Exact inputs always get the complete root-of-unity test, so `ru_bound`
/// only caps the order that is accepted as a witness.
pub fn classify_pair(f: &Mobius, g: &Mobius, ru_bound: u64) -> Result<Classification, SolverError> {
    let trivial = |reason: &str, case, witness, tested| Classification {
        family: Family::TrivialNonFree,
        case,
        witness,
        reason: Some(reason.to_string()),
        tested,
    };
    if f.is_identity() || g.is_identity() {
        return Ok(trivial("identity generator", None, None, vec![]));
    }
    if f.eq_exact(g) {
        return Ok(trivial("f = g", None, None, vec![]));
    }
    let nf = normalize_pair(f, g)?;
    let (al, de) = (&nf.alpha, &nf.delta);
    let within = |t: &TestedQuantity| t.order.is_some_and(|m| m <= ru_bound);

    let mut tested = vec![test("alpha", al.clone()), test("delta", de.clone())];
    for t in &tested {
        if let Some(m) = t.order.filter(|&m| m > 1 && m <= ru_bound) {
            let w = Some((t.quantity.clone(), m));
            return Ok(trivial("generator of finite order", Some(nf.case), w, tested));
        }
    }
    match nf.case {
        CaseTag::TwoSharedFixed => Ok(trivial("both maps fix the same two points and commute", Some(nf.case), None, tested)),
        CaseTag::NoSharedFixed => {
            let cands = [test("alpha/delta", al.try_div(de)?), test("alpha*delta", al.try_mul(de)?)];
            let hit = cands.iter().find(|t| within(t)).map(|t| (t.quantity.clone(), t.order.unwrap()));
            tested.extend(cands);
            let family = if hit.is_some() { Family::Exceptional1 } else { Family::NonExceptional };
            Ok(Classification { family, case: Some(nf.case), witness: hit, reason: None, tested })
        }
        CaseTag::OneSharedFixed => {
            if tested.iter().all(|t| t.order == Some(1)) {
                return Ok(trivial("two translations commute", Some(nf.case), None, tested));
            }
            if tested.iter().any(|t| t.order.is_some()) {
                // one translation and one non-unit multiplier
                return Ok(Classification { family: Family::NonExceptional, case: Some(nf.case), witness: None, reason: None, tested });
            }
            let cands = [
                test("alpha/delta", al.try_div(de)?),
                test("alpha^2/delta", al.try_mul(al)?.try_div(de)?),
                test("delta^2/alpha", de.try_mul(de)?.try_div(al)?),
            ];
            let hit = cands
                .iter()
                .enumerate()
                .find(|(i, t)| within(t) && !(*i == 0 && t.order == Some(1)))
                .map(|(_, t)| (t.quantity.clone(), t.order.unwrap()));
            tested.extend(cands);
            let family = if hit.is_some() { Family::Exceptional2 } else { Family::NonExceptional };
            Ok(Classification { family, case: Some(nf.case), witness: hit, reason: None, tested })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mobius {
        Mobius::from_ints(a, b, c, d).unwrap()
    }

    fn classify(f: Mobius, g: Mobius) -> Classification {
        classify_pair(&f, &g, 64).unwrap()
    }

    #[test]
    fn reflection_pair() {
        let c = classify(m(2, 1, 0, 1), m(-2, 0, 0, 1));
        assert_eq!(c.family, Family::Exceptional2);
        assert_eq!(c.witness, Some(("alpha/delta".into(), 2)));
    }

    #[test]
    fn square_pair() {
        let c = classify(m(2, 1, 0, 1), m(4, 0, 0, 1));
        assert_eq!(c.family, Family::Exceptional2);
        assert_eq!(c.witness, Some(("alpha^2/delta".into(), 1)));
    }

    #[test]
    fn translation_and_inverse_translation() {
        let c = classify(m(1, 2, 0, 1), m(1, 0, 2, 1));
        assert_eq!(c.family, Family::Exceptional1);
        assert_eq!(c.witness, Some(("alpha/delta".into(), 1)));
    }

    #[test]
    fn generic_pair() {
        let c = classify(m(2, 1, 0, 1), m(3, 1, 0, 1));
        assert_eq!(c.family, Family::NonExceptional);
        assert_eq!(c.tested.len(), 5);
        assert!(c.tested[2..].iter().all(|t| t.order.is_none()));
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(classify(m(2, 0, 0, 1), m(3, 0, 0, 1)).family, Family::TrivialNonFree);
        assert_eq!(classify(m(2, 1, 0, 1), m(2, 1, 0, 1)).family, Family::TrivialNonFree);
        assert_eq!(classify(m(1, 1, 0, 1), m(1, 3, 0, 1)).family, Family::TrivialNonFree);
        // 1/X has order 2
        let c = classify(m(2, 1, 0, 1), m(0, 1, 1, 0));
        assert_eq!(c.family, Family::TrivialNonFree);
    }
}
