mod common;

use common::*;
use eqlab_core::numeric::Scalar;
use eqlab_core::puiseux::{expand_equalizer_branches, Series};
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Half-integer exponents from `lead/2` on, optionally truncated.
fn series() -> impl Strategy<Value = Series> {
    (-2i64..=2, prop::collection::vec((-4i64..=4, 1i64..=3), 1..5), prop::option::of(1i64..=6)).prop_map(|(lead, cs, order)| {
        let mut terms: Vec<(BigRational, Scalar)> = cs.iter().enumerate().map(|(j, &(n, d))| (q(lead + j as i64, 2), frac(n, d))).collect();
        if terms[0].1.is_zero() {
            terms[0].1 = Scalar::one();
        }
        Series::from_terms(terms, order.map(|o| q(lead + o, 2)))
    })
}

fn exact_series() -> impl Strategy<Value = Series> {
    series().prop_map(|s| Series::from_terms(s.terms().map(|(e, c)| (e.clone(), c.clone())), None))
}

fn multiplier() -> impl Strategy<Value = Scalar> {
    prop::sample::select(vec![(2i64, 1i64), (3, 1), (-2, 1), (1, 2), (3, 2), (-1, 3), (5, 2), (-4, 1)]).prop_map(|(n, d)| frac(n, d))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    (prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3, 5]), 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

proptest! {
    #![proptest_config(fixed(150, 31))]

    #[test]
    fn ring_axioms_to_order(a in series(), b in series(), c in series()) {
        prop_assert!(a.mul(&b).unwrap().mul(&c).unwrap().eq_exact(&a.mul(&b.mul(&c).unwrap()).unwrap()));
        prop_assert!(a.mul(&b).unwrap().eq_exact(&b.mul(&a).unwrap()));
        prop_assert!(a.add(&b).unwrap().add(&c).unwrap().eq_exact(&a.add(&b.add(&c).unwrap()).unwrap()));
        prop_assert!(a.sub(&a).unwrap().is_zero_to_order());
    }

    #[test]
    fn exact_distributivity(a in exact_series(), b in exact_series(), c in exact_series()) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero_to_order());
    }

    #[test]
    fn inverse_and_square_root(s in series()) {
        let one = s.mul(&s.inv().unwrap()).unwrap().sub(&Series::one()).unwrap();
        prop_assert!(one.is_zero_to_order(), "{} * inverse - 1 = {}", s, one);
        let r = s.sqrt().unwrap();
        prop_assert!(r.mul(&r).unwrap().sub(&s).unwrap().is_zero_to_order(), "sqrt({}) = {}", s, r);
        prop_assert_eq!(r.val().unwrap() * q(2, 1), s.val().unwrap());
    }
}

proptest! {
    #![proptest_config(fixed(30, 32))]

    #[test]
    fn branch_valuations(
        alpha in multiplier(),
        delta in multiplier(),
        beta in nonzero(),
        gamma in nonzero(),
        k in prop::sample::select(vec![(2i64, 1i64), (3, 1), (5, 2), (7, 3), (4, 1), (9, 4)]),
        i in 0i64..4,
    ) {
        let k = q(k.0, k.1);
        let ex = match expand_equalizer_branches(&alpha, &beta, &gamma, &delta, i, &k, &q(6, 1)) {
            Ok(ex) => ex,
            Err(eqlab_core::puiseux::PuiseuxError::SharedFixedPoint) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let rep = ex.verify(&alpha, &beta, &gamma, &delta).unwrap();
        prop_assert!(rep.all_ok(), "{:?}", rep);
        prop_assert_eq!(rep.val_minus, q(-1, 1));
        prop_assert_eq!(rep.val_plus, k);
        prop_assert!(rep.relative_order_plus >= q(6, 1) && rep.relative_order_minus >= q(6, 1));
    }
}
