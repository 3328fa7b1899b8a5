//! Arbitrary-precision rational numbers.
//!
//! `Rat` is `num_rational::BigRational`, which keeps numerator and
//! denominator coprime with the denominator positive -- exactly the
//! normalization the rest of the crate relies on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_int(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denom_lcm(rs: &[Rat]) -> BigInt {
    let mut l = BigInt::one();
    for r in rs {
        l = num_integer::lcm(l, r.denom().clone());
    }
    l
}

/// Greatest common divisor of the numerators (used to strip content after
/// clearing denominators).
pub fn numer_gcd(ns: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for n in ns {
        g = num_integer::gcd(g, n.abs());
    }
    g
}
