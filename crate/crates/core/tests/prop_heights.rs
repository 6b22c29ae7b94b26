mod common;

use std::collections::HashSet;

use common::*;
use eqlab_core::algebra::{Polynomial, ProjPoint, RationalFunction};
use eqlab_core::heights::{canonical_height_estimate, is_preperiodic, rational_height, weil_height, CertifiedReal, HeightError, OrbitVerdict};
use eqlab_core::numeric::Scalar;
use num_rational::BigRational;
use proptest::prelude::*;

const PREC: u64 = 128;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn agree(a: CertifiedReal, b: CertifiedReal) -> bool {
    (a.value - b.value).abs() <= a.error + b.error + 1e-12
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (prop::sample::select(vec![-90i64, -7, -3, -1, 1, 2, 5, 12, 1000]), 1i64..=50).prop_map(|(n, d)| q(n, d))
}

fn quadratic() -> impl Strategy<Value = Scalar> {
    ((-9i64..=9, 1i64..=6), (1i64..=9, 1i64..=6), prop::sample::select(vec![2i64, 3, 5, -1, -3])).prop_map(|(a, b, d)| quad(a, b, d))
}

/// `X² + c` or `(X² + c)/(kX)` for small `c`, `k`; the second needs `c ≠ 0`
/// to stay of degree two.
fn map() -> impl Strategy<Value = RationalFunction> {
    ((-8i64..=8, 1i64..=4), 0i64..=3).prop_filter("degree one", |((n, _), k)| *k == 0 || *n != 0).prop_map(|((n, d), k)| {
        let num = Polynomial::new(vec![frac(n, d), Scalar::zero(), Scalar::one()]);
        let den = if k == 0 { Polynomial::one() } else { Polynomial::new(vec![Scalar::zero(), Scalar::from_int(k)]) };
        RationalFunction::new(num, den).unwrap()
    })
}

fn step(f: &RationalFunction, x: &Option<BigRational>) -> Option<BigRational> {
    let p = match x {
        None => ProjPoint::Infinity,
        Some(v) => ProjPoint::Affine(Scalar::from_rational(v.clone())),
    };
    f.eval(&p).unwrap().value().map(|s| s.as_rational().unwrap())
}

proptest! {
    #![proptest_config(fixed(50, 61))]

    #[test]
    fn rational_heights_invert_and_square(x in nonzero_rational()) {
        let h = rational_height(&x);
        prop_assert!(agree(h, rational_height(&x.recip())));
        prop_assert!(agree(rational_height(&(&x * &x)), h.scale(2.0)));
        let naive = x.numer().to_string().trim_start_matches('-').parse::<f64>().unwrap().max(x.denom().to_string().parse::<f64>().unwrap()).ln();
        prop_assert!(h.contains(naive) || (h.value - naive).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(fixed(20, 62))]

    #[test]
    fn quadratic_heights_invert_and_square(x in quadratic()) {
        prop_assume!(!x.is_zero());
        let h = weil_height(&x, PREC).unwrap().value;
        prop_assert!(agree(h, weil_height(&x.inv().unwrap(), PREC).unwrap().value));
        prop_assert!(agree(weil_height(&x.try_mul(&x).unwrap(), PREC).unwrap().value, h.scale(2.0)));
    }
}

proptest! {
    #![proptest_config(fixed(60, 63))]

    #[test]
    fn canonical_estimates_converge(f in map(), x in (-6i64..=6, 1i64..=3).prop_map(|(n, d)| q(n, d)), big_n in 1u32..=3) {
        let a = match canonical_height_estimate(&f, &x, big_n) {
            Err(HeightError::OrbitPole(_)) => return Ok(()),
            other => other.unwrap(),
        };
        let b = match canonical_height_estimate(&f, &x, big_n + 2) {
            Err(HeightError::OrbitPole(_)) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert!((a.value - b.value).abs() < a.error + 1e-12, "{} then {}", a, b);
        prop_assert!(b.error < a.error);
    }

    #[test]
    fn orbit_verdicts_are_consistent(f in map(), x in (-4i64..=4, 1i64..=2).prop_map(|(n, d)| q(n, d))) {
        let x = Some(x);
        let res = is_preperiodic(&f, &x, 40, None).unwrap();
        // walk the orbit independently
        let mut seen = HashSet::new();
        let mut cur = x.clone();
        let mut repeated = false;
        for _ in 0..=res.orbit.len() {
            if !seen.insert(cur.clone()) {
                repeated = true;
                break;
            }
            cur = step(&f, &cur);
        }
        match res.verdict {
            OrbitVerdict::Preperiodic { tail, cycle } => {
                prop_assert!(repeated);
                prop_assert!(cycle > 0);
                prop_assert_eq!(&res.orbit[tail], &res.orbit[tail + cycle]);
                if let (Some(v), Ok(est)) = (&x, canonical_height_estimate(&f, x.as_ref().unwrap(), 4)) {
                    prop_assert!(est.lo() <= 1e-12, "preperiodic {} has estimate {}", v, est);
                }
            }
            OrbitVerdict::EscapedHeightBound => {
                prop_assert!(!repeated, "escaped orbit repeats");
                if let Ok(est) = canonical_height_estimate(&f, x.as_ref().unwrap(), 6) {
                    prop_assert!(est.hi() > 0.0);
                }
            }
            OrbitVerdict::Undecided => {}
        }
    }
}
