//! Seeded random parameters in ℚ(√2)(u).

use crate::exactfield::{FieldElem, QSqrt2};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent stream per sample index, so results do not depend on scheduling.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    let p: i64 = rng.gen_range(-9..=9);
    let q: i64 = rng.gen_range(1..=6);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn random_qsqrt2<R: Rng>(rng: &mut R) -> QSqrt2 {
    let irr = if rng.gen_bool(0.5) { random_rational(rng) } else { BigRational::from_integer(0.into()) };
    QSqrt2::new(random_rational(rng), irr)
}

fn random_poly<R: Rng>(rng: &mut R, u: &FieldElem, deg: u32) -> FieldElem {
    let mut acc = FieldElem::zero();
    let mut p = FieldElem::one();
    for _ in 0..=deg {
        acc = &acc + &(&FieldElem::from_qsqrt2(random_qsqrt2(rng)) * &p);
        p = &p * u;
    }
    acc
}

/// A random element num/den with deg num ≤ 2 and deg den ≤ 1 in `u`.
pub fn random_elem<R: Rng>(rng: &mut R, u: &FieldElem) -> FieldElem {
    let dn = rng.gen_range(0..=2);
    let num = random_poly(rng, u, dn);
    loop {
        let dd = rng.gen_range(0..=1);
        let den = random_poly(rng, u, dd);
        if !den.is_zero() {
            return &num / &den;
        }
    }
}

/// A random nonzero element; returns the number of rejected zero draws.
pub fn random_unit<R: Rng>(rng: &mut R, u: &FieldElem) -> (FieldElem, usize) {
    let mut rejected = 0;
    loop {
        let e = random_elem(rng, u);
        if !e.is_zero() {
            return (e, rejected);
        }
        rejected += 1;
    }
}
