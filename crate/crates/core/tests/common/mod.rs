//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use eqlab_core::algebra::{Mobius, Polynomial, ProjPoint, RationalFunction};
use eqlab_core::numeric::Scalar;
use eqlab_core::solver::{classify_pair, Family};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn small_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Scalar {
    loop {
        let n: i64 = rng.gen_range(-5..=5);
        let d: i64 = rng.gen_range(1..=3);
        if !nonzero || n != 0 {
            return Scalar::frac(n, d);
        }
    }
}

/// A multiplier that is not a root of unity.
pub fn multiplier(rng: &mut ChaCha8Rng) -> Scalar {
    let choices = [(2, 1), (3, 1), (-2, 1), (-3, 1), (1, 2), (3, 2), (-1, 3), (5, 2), (2, 3), (-4, 1)];
    let (n, d) = *choices.choose(rng).unwrap();
    Scalar::frac(n, d)
}

pub fn small_mobius(rng: &mut ChaCha8Rng) -> Mobius {
    loop {
        let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-4..=4)).collect();
        if let Ok(m) = Mobius::from_ints(e[0], e[1], e[2], e[3]) {
            return m;
        }
    }
}

/// A pair built from one of the normal forms and conjugated by a random
/// integer map, so its fixed points stay rational.
pub fn conjugated_pair(rng: &mut ChaCha8Rng) -> (Mobius, Mobius) {
    let alpha = multiplier(rng);
    let delta = multiplier(rng);
    let beta = small_rational(rng, true);
    let gamma = small_rational(rng, true);
    let f = Mobius::affine(alpha, beta).unwrap();
    let g = if rng.gen_bool(0.5) {
        Mobius::affine(delta, gamma).unwrap()
    } else {
        // X/(γX + δ) fixes 0 and (1 − δ)/γ
        Mobius::new(Scalar::one(), Scalar::zero(), gamma, delta).unwrap()
    };
    let h = small_mobius(rng);
    (f.conjugate(&h).unwrap(), g.conjugate(&h).unwrap())
}

pub fn non_exceptional_pair(rng: &mut ChaCha8Rng) -> (Mobius, Mobius) {
    loop {
        let (f, g) = conjugated_pair(rng);
        if classify_pair(&f, &g, 64).is_ok_and(|c| c.family == Family::NonExceptional) {
            return (f, g);
        }
    }
}

pub fn small_poly(rng: &mut ChaCha8Rng, degree: usize) -> Polynomial {
    let mut c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-3..=3)).collect();
    if c[degree] == 0 {
        c[degree] = 1;
    }
    Polynomial::from_ints(&c)
}

/// A rational function of degree between 1 and `max_degree`.
pub fn small_ratfun(rng: &mut ChaCha8Rng, max_degree: usize) -> RationalFunction {
    loop {
        let dn = rng.gen_range(0..=max_degree);
        let dd = rng.gen_range(0..=max_degree);
        let r = RationalFunction::new(small_poly(rng, dn), small_poly(rng, dd)).unwrap();
        if (1..=max_degree).contains(&r.degree()) {
            return r;
        }
    }
}

/// `fⁿ + s·E` with `E` the numerator of `fⁿ − gⁿ`, for a random small `n`:
/// a target of degree at most 3 that meets every affine point of that equalizer.
pub fn through_equalizer(rng: &mut ChaCha8Rng, f: &Mobius, g: &Mobius) -> RationalFunction {
    let n = rng.gen_range(1..=3u64);
    let fnn = f.iterate(n).unwrap().to_ratfun();
    let diff = fnn.try_sub(&g.iterate(n).unwrap().to_ratfun()).unwrap();
    let s = small_rational(rng, true);
    let bump = RationalFunction::from_poly(diff.num().try_scale(&s).unwrap());
    fnn.try_add(&bump).unwrap()
}

/// An element `a + b√d` of a random real quadratic field, or a rational.
pub fn quadratic_scalar(rng: &mut ChaCha8Rng, d: i64) -> Scalar {
    let root = Scalar::from_int(d).sqrt().unwrap();
    let a = small_rational(rng, false);
    let b = small_rational(rng, false);
    a.try_add(&b.try_mul(&root).unwrap()).unwrap()
}

/// `m` applied `n` times, one step at a time.
pub fn apply_times(m: &Mobius, p: &ProjPoint, n: u64) -> ProjPoint {
    let mut cur = p.clone();
    for _ in 0..n {
        cur = m.apply(&cur).unwrap();
    }
    cur
}

/// Mahler measure from the eigenvalues of the companion matrix, in `f64`.
pub fn companion_mahler(coeffs: &[f64]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    let eig = m.complex_eigenvalues();
    lead.abs() * eig.iter().map(|z| z.norm().max(1.0)).product::<f64>()
}

/// Proptest settings with a fixed seed and no failure files.
pub fn fixed(cases: u32, seed: u64) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases, rng_seed: proptest::test_runner::RngSeed::Fixed(seed), failure_persistence: None, ..Default::default() }
}

/// A rational from proptest-drawn integers.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

/// `a + b√d` from proptest-drawn integers.
pub fn quad(a: (i64, i64), b: (i64, i64), d: i64) -> Scalar {
    let root = Scalar::from_int(d).sqrt().unwrap();
    frac(a.0, a.1).try_add(&frac(b.0, b.1).try_mul(&root).unwrap()).unwrap()
}
