//! Arbitrary-precision integer and rational arithmetic, prime generation,
//! p-adic valuations, finite fields, and high-precision real logarithms.
//!
//! The coefficient universe of the whole crate is `Z` and `Q`, re-exported
//! here as [`BigInt`] and [`BigRat`]. Arithmetic is exact everywhere; the
//! only approximate type is [`Real`], which carries its own error bound.

mod ff;
mod primes;
mod real;
pub mod rng;

pub use ff::{ff_construct, FieldElem, FiniteField, FpPoly, MAX_EXTENSION_DEGREE};
pub use primes::{is_prime, primes_up_to};
pub use real::{Real, FRAC_BITS};

use crate::{Error, Result};
use alloc::format;
use num_bigint::Sign;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type BigInt = num_bigint::BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type BigRat = num_rational::BigRational;

/// Convenience constructor for small integers.
pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Convenience constructor for small rationals. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

/// The p-adic valuation of an integer: either the largest power of `p`
/// dividing it, or infinite for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(u64),
    /// v_p(0); kept distinct from every finite value.
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(e) => Some(e),
            Valuation::Infinite => None,
        }
    }
}

/// Largest `e` with `p^e | a`, as a [`Valuation`] so that `a = 0` has a
/// distinct answer instead of a made-up number.
pub fn padic_valuation(a: &BigInt, p: u64) -> Result<Valuation> {
    if p < 2 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if a.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let p = BigInt::from(p);
    let mut rest = a.abs();
    let mut e = 0u64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &p);
        if !r.is_zero() {
            return Ok(Valuation::Finite(e));
        }
        rest = q;
        e += 1;
    }
}

/// Natural logarithm of a positive rational, with tracked absolute error
/// at most `2^-192` plus a few ulps (far below the 1e-12 contract).
pub fn log_real(x: &BigRat) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("log of non-positive value {x}")));
    }
    Ok(Real::ln_rat(x))
}

/// Nonnegative gcd of two integers.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b)
}

/// Exact binomial coefficient `C(n, k)` for big arguments.
///
/// The iteration count is `min(k, n-k)`, capped at 10 000; beyond that
/// the result has too many digits to be worth materializing.
pub fn binomial(n: &BigInt, k: &BigInt) -> Result<BigInt> {
    if n.sign() == Sign::Minus || k.sign() == Sign::Minus {
        return Err(Error::Domain(format!("binomial({n}, {k}) with negative argument")));
    }
    if k > n {
        return Ok(BigInt::zero());
    }
    let k = core::cmp::min(k.clone(), n - k);
    if k > BigInt::from(10_000u32) {
        return Err(Error::CostCap(format!(
            "binomial({n}, {k}) exceeds the exact-computation cap"
        )));
    }
    let mut acc = BigInt::one();
    let mut i = BigInt::one();
    while i <= k {
        acc = acc * (n - &k + &i) / &i;
        i += 1;
    }
    Ok(acc)
}
