//! Exact rational scalars.
//!
//! All coefficients in the crate live in Q, represented by
//! `num::BigRational` (arbitrary-precision, always fully reduced, positive
//! denominator). The helpers here are just short constructors.

pub use num::BigRational;
use num::{BigInt, One, Signed, Zero};

/// The rational p/q. Panics if q = 0.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// The integer n as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn is_zero(r: &BigRational) -> bool {
    r.is_zero()
}

pub fn is_one(r: &BigRational) -> bool {
    r.is_one()
}

/// Renders `p/q`, or just `p` for integers.
pub fn to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// gcd of two nonnegative rationals, taken as gcd of numerators over lcm of
/// denominators; gcd(0, a) = a. Used for polynomial content.
pub fn content_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = num::integer::gcd(a.numer().abs(), b.numer().abs());
    let den = num::integer::lcm(a.denom().clone(), b.denom().clone());
    BigRational::new(num, den)
}
