//! Shared helpers for the integration suites: seeded draws of dyadic
//! scalars, knot configurations, and random functions of bounded 2k-th
//! derivative.

#![allow(dead_code)]

use hermitek::basis::KnotConfiguration;
use hermitek::poly::{PiecewisePolynomial, Polynomial};
use hermitek::scalar::{ArithMode, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Uniform dyadic in (0,1) with 20 fractional bits; exact in either mode.
pub fn dyadic(r: &mut ChaCha12Rng, mode: ArithMode) -> Scalar {
    let x: i64 = r.gen_range(0..(1i64 << 20));
    mode.from_dyadic(2 * x + 1, -21)
}

/// Uniform dyadic in (-1, 1).
pub fn signed_dyadic(r: &mut ChaCha12Rng, mode: ArithMode) -> Scalar {
    let v = dyadic(r, mode);
    if r.gen() {
        -v
    } else {
        v
    }
}

/// A random strict configuration of 2k-4 interior knots.
pub fn random_config(r: &mut ChaCha12Rng, k: usize, mode: ArithMode) -> KnotConfiguration {
    loop {
        let mut v: Vec<Scalar> = (0..2 * k - 4).map(|_| dyadic(r, mode)).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if v.windows(2).all(|w| w[0] < w[1]) {
            if let Ok(c) = KnotConfiguration::new(k, v) {
                return c;
            }
        }
    }
}

/// A random polynomial of degree <= deg with small rational coefficients.
pub fn random_polynomial(r: &mut ChaCha12Rng, deg: usize, mode: ArithMode) -> Polynomial {
    let coeffs: Vec<Scalar> = (0..=deg)
        .map(|_| {
            let num = r.gen_range(-9..=9i64);
            let den = r.gen_range(1..=4i64);
            mode.from_ratio(num, den)
        })
        .collect();
    Polynomial::new(coeffs).unwrap()
}

pub fn one_piece(p: Polynomial, mode: ArithMode) -> PiecewisePolynomial {
    PiecewisePolynomial::new(vec![mode.zero(), mode.one()], vec![p], i64::MAX).unwrap()
}

/// A random function with ||f^(2k)|| <= 1: 2k-fold exact integral of a
/// random piecewise-constant g with |g| <= 1 and `cuts` interior jumps.
pub fn random_smooth_bounded(r: &mut ChaCha12Rng, k: usize, cuts: usize) -> PiecewisePolynomial {
    let rat = ArithMode::Rational;
    let mut breaks = vec![rat.zero()];
    loop {
        let mut v: Vec<Scalar> = (0..cuts).map(|_| dyadic(r, rat)).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if v.windows(2).all(|w| w[0] < w[1]) {
            breaks.extend(v);
            break;
        }
    }
    breaks.push(rat.one());
    let pieces: Vec<Polynomial> = (0..=cuts)
        .map(|_| Polynomial::constant(signed_dyadic(r, rat)))
        .collect();
    let mut f = PiecewisePolynomial::new(breaks, pieces, -1).unwrap();
    for _ in 0..2 * k {
        f = f.integrate();
    }
    f
}

pub fn assert_in_band(what: &str, value: f64, lo: f64, hi: f64) {
    assert!(
        value >= lo && value <= hi,
        "{what} = {value:.6e} outside [{lo:.3e}, {hi:.3e}]"
    );
}
