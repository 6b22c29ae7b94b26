mod common;

use common::*;
use eqlab_core::algebra::{sort_dedup, Mobius, ProjPoint};
use eqlab_core::numeric::Scalar;
use eqlab_core::solver::{
    classify_pair, closed_form_equalizer, enumerate_solutions, family_generate, family_verify, generic_equalizer, normalize_pair, FamilyId,
    SolverError,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn image(h: &Mobius, pts: &[ProjPoint]) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = pts.iter().map(|p| h.apply(p).unwrap()).collect();
    sort_dedup(&mut out);
    out
}

fn same(a: &[ProjPoint], b: &[ProjPoint]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.eq_exact(y))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3, 5]), 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

proptest! {
    #![proptest_config(fixed(20, 41))]

    #[test]
    fn closed_form_agrees_with_generic(seed in any::<u64>(), n in 1u64..=30) {
        let (f, g) = conjugated_pair(&mut rng(seed));
        let nf = normalize_pair(&f, &g).unwrap();
        let generic = match generic_equalizer(&f, &g, n) {
            Err(SolverError::DegenerateEqualizer) => return Ok(()),
            other => other.unwrap(),
        };
        let closed: Vec<ProjPoint> = closed_form_equalizer(&nf, n).unwrap().into_iter().map(|e| e.point).collect();
        let back = image(&nf.conjugator.inverse().unwrap(), &closed);
        prop_assert!(same(&back, &generic), "n = {}: {:?} vs {:?}", n, back, generic);
    }

    #[test]
    fn records_reverify(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = non_exceptional_pair(&mut r);
        let c = through_equalizer(&mut r, &f, &g);
        let e = enumerate_solutions(&f, &g, &c, 6).unwrap();
        for rec in e.records.iter().chain(&e.at_infinity) {
            prop_assert!(rec.verified);
            let x = apply_times(&f, &rec.point, rec.n);
            prop_assert!(x.eq_exact(&apply_times(&g, &rec.point, rec.n)));
            prop_assert!(x.eq_exact(&c.eval(&rec.point).unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(fixed(40, 42))]

    #[test]
    fn conjugation_invariance(seed in any::<u64>(), n in 1u64..=6) {
        let mut r = rng(seed);
        let (f, g) = conjugated_pair(&mut r);
        let h = small_mobius(&mut r);
        let (f2, g2) = (f.conjugate(&h).unwrap(), g.conjugate(&h).unwrap());
        let (c1, c2) = (classify_pair(&f, &g, 64).unwrap(), classify_pair(&f2, &g2, 64).unwrap());
        prop_assert_eq!(c1.family, c2.family);
        prop_assert_eq!(c1.witness, c2.witness);
        match (generic_equalizer(&f, &g, n), generic_equalizer(&f2, &g2, n)) {
            (Ok(a), Ok(b)) => prop_assert!(same(&image(&h, &a), &b)),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }
}

fn verify_random(id: FamilyId, params: Vec<Scalar>) -> Result<(), TestCaseError> {
    prop_assume!(family_generate(id, &params).is_ok());
    let rep = family_verify(id, &params, 50).unwrap();
    prop_assert!(rep.all_pass(), "{} at {:?}", id, params);
    prop_assert!(rep.checked() > 0);
    Ok(())
}

proptest! {
    #![proptest_config(fixed(6, 43))]

    #[test]
    fn first_family(b in rational(), c in rational()) {
        verify_random(FamilyId::R1, vec![b, c])?;
    }

    #[test]
    fn second_family(a in rational(), b in rational(), c in rational()) {
        verify_random(FamilyId::R2, vec![a, b, c])?;
    }

    #[test]
    fn fifth_family(a in rational(), mu in rational()) {
        verify_random(FamilyId::R5, vec![a, mu])?;
    }
}

#[test]
fn every_family_at_defaults() {
    for id in FamilyId::ALL {
        let rep = family_verify(id, &[], 50).unwrap();
        assert!(rep.all_pass(), "{}", id);
    }
}
