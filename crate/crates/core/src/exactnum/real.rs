//! Fixed-point reals with a tracked absolute error bound.
//!
//! Every height in this crate is the logarithm of an exact rational, and
//! every bound is an exact rational combination of such logarithms. A
//! [`Real`] holds `mant * 2^-FRAC_BITS` together with an upper bound on
//! its distance from the true value, in units of `2^-FRAC_BITS`. With 192
//! fractional bits the accumulated error stays dozens of orders of
//! magnitude below the 1e-12 contract of the public operations, and the
//! bound is checkable at runtime via [`Real::abs_error_bound`].
//!
//! Comparisons (`Ord`, `PartialEq`) use the center value; callers that
//! care about the error band combine them with `abs_error_bound`.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Number of fractional bits: one ulp is `2^-192 ~ 1.6e-58`.
pub const FRAC_BITS: u32 = 192;

#[derive(Debug, Clone)]
pub struct Real {
    mant: BigInt,
    /// Error bound in ulps; the true value lies in `mant ± err` ulps.
    err: BigInt,
}

fn round_shift(a: &BigInt, s: u32) -> BigInt {
    (a + (BigInt::one() << (s - 1))) >> s
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    num_integer::Integer::div_floor(&(a * 2 + b), &(b * 2))
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(!a.is_negative() && b.is_positive());
    num_integer::Integer::div_ceil(a, b)
}

impl Real {
    pub fn zero() -> Real {
        Real { mant: BigInt::zero(), err: BigInt::zero() }
    }

    pub fn from_bigint(v: &BigInt) -> Real {
        Real { mant: v << FRAC_BITS, err: BigInt::zero() }
    }

    pub fn from_u64(v: u64) -> Real {
        Real::from_bigint(&BigInt::from(v))
    }

    pub fn from_rational(r: &BigRational) -> Real {
        let mant = round_div(&(r.numer() << FRAC_BITS), r.denom());
        Real { mant, err: BigInt::one() }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn add(&self, rhs: &Real) -> Real {
        Real { mant: &self.mant + &rhs.mant, err: &self.err + &rhs.err }
    }

    pub fn sub(&self, rhs: &Real) -> Real {
        Real { mant: &self.mant - &rhs.mant, err: &self.err + &rhs.err }
    }

    pub fn neg(&self) -> Real {
        Real { mant: -&self.mant, err: self.err.clone() }
    }

    pub fn mul(&self, rhs: &Real) -> Real {
        let mant = round_shift(&(&self.mant * &rhs.mant), FRAC_BITS);
        let spread =
            self.mant.abs() * &rhs.err + rhs.mant.abs() * &self.err + &self.err * &rhs.err;
        let err = ceil_div(&spread, &(BigInt::one() << FRAC_BITS)) + 1;
        Real { mant, err }
    }

    /// Scale by an exact rational.
    pub fn mul_rational(&self, r: &BigRational) -> Real {
        let mant = round_div(&(&self.mant * r.numer()), r.denom());
        let err = ceil_div(&(&self.err * r.numer().abs()), r.denom()) + 1;
        Real { mant, err }
    }

    /// Natural log of `2`, used by the argument reduction and exposed for
    /// the `log 2` term of the decomposability bound.
    pub fn ln2() -> Real {
        // ln 2 = 2 atanh(1/3)
        let third = round_div(&(BigInt::one() << FRAC_BITS), &BigInt::from(3));
        let (sum, iters) = atanh_series(&third);
        Real { mant: sum << 1, err: BigInt::from(4 * iters + 16) }
    }

    /// Natural log of a positive exact rational.
    ///
    /// Argument reduction writes `x = 2^e * y` with `y` in `(1/2, 2)`, then
    /// `ln y = 2 atanh((y-1)/(y+1))` with `|(y-1)/(y+1)| < 1/3`.
    pub fn ln_rat(x: &BigRational) -> Real {
        assert!(x.is_positive(), "ln of non-positive rational");
        let e = x.numer().bits() as i64 - x.denom().bits() as i64;
        let (yn, yd) = if e >= 0 {
            (x.numer().clone(), x.denom() << (e as u32))
        } else {
            (x.numer() << ((-e) as u32), x.denom().clone())
        };
        let t = round_div(&((&yn - &yd) << FRAC_BITS), &(&yn + &yd));
        let (sum, iters) = atanh_series(&t);
        let mut out = Real { mant: sum << 1, err: BigInt::from(4 * iters + 16) };
        if e != 0 {
            let scaled = Real::ln2().mul_rational(&BigRational::from(BigInt::from(e)));
            out = out.add(&scaled);
        }
        out
    }

    /// The tracked absolute error bound, as an exact rational.
    pub fn abs_error_bound(&self) -> BigRational {
        BigRational::new(self.err.clone(), BigInt::one() << FRAC_BITS)
    }

    /// Center value as an exact rational `mant / 2^FRAC_BITS`.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << FRAC_BITS)
    }

    /// `self <= rhs + tol`, comparing center values.
    pub fn le_within(&self, rhs: &Real, tol: &BigRational) -> bool {
        let diff = &self.mant - &rhs.mant;
        diff * tol.denom() <= (tol.numer() << FRAC_BITS)
    }

    /// `|self - rhs| <= tol`, comparing center values.
    pub fn approx_eq(&self, rhs: &Real, tol: &BigRational) -> bool {
        let diff = (&self.mant - &rhs.mant).abs();
        diff * tol.denom() <= (tol.numer() << FRAC_BITS)
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        if bits <= 1000 {
            let approx = self.mant.to_f64().expect("mantissa fits f64 range");
            approx * pow2(-(FRAC_BITS as i32))
        } else {
            let shift = bits - 64;
            let top = (&self.mant >> shift).to_f64().expect("64-bit top fits");
            top * pow2(shift as i32 - FRAC_BITS as i32)
        }
    }

    /// Scientific-notation decimal string with `sig` significant digits,
    /// e.g. `1.79175946922806e0`. Deterministic; rounds the center value
    /// half-up.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.mant.is_zero() {
            return String::from("0");
        }
        let neg = self.mant.is_negative();
        let m = self.mant.abs();
        // first estimate of the decimal exponent from the bit length; the
        // loop below corrects any off-by-one
        let bits = m.bits() as i64 - FRAC_BITS as i64;
        let est = (bits as f64 - 0.5) * core::f64::consts::LOG10_2;
        let mut e10 = est as i64;
        if (e10 as f64) > est {
            e10 -= 1;
        }
        let ten = BigInt::from(10);
        loop {
            // N = round(value * 10^(sig - 1 - e10)) should have sig digits
            let k = sig as i64 - 1 - e10;
            let n = if k >= 0 {
                round_shift(&(&m * ten.pow(k as u32)), FRAC_BITS)
            } else {
                round_div(&m, &(ten.pow((-k) as u32) << FRAC_BITS))
            };
            let lo = ten.pow(sig as u32 - 1);
            let hi = ten.pow(sig as u32);
            if n < lo {
                e10 -= 1;
                continue;
            }
            if n >= hi {
                e10 += 1;
                continue;
            }
            let digits = n.to_string();
            let mut out = String::new();
            if neg {
                out.push('-');
            }
            out.push_str(&digits[..1]);
            if sig > 1 {
                out.push('.');
                out.push_str(&digits[1..]);
            }
            out.push('e');
            out.push_str(&e10.to_string());
            return out;
        }
    }
}

/// Construct `2^e` as an `f64` via the exponent bits; saturates outside
/// the normal range.
fn pow2(e: i32) -> f64 {
    if e < -1022 {
        0.0
    } else if e > 1023 {
        f64::INFINITY
    } else {
        f64::from_bits(((e + 1023) as u64) << 52)
    }
}

/// Fixed-point `atanh(t) = t + t^3/3 + t^5/5 + ...` for `|t| < 2^FRAC_BITS / 3`.
/// Returns the sum and the number of iterations (for the error bound).
fn atanh_series(t: &BigInt) -> (BigInt, u64) {
    let t2 = round_shift(&(t * t), FRAC_BITS);
    let mut sum = t.clone();
    let mut term = t.clone();
    let mut k: u64 = 1;
    loop {
        term = round_shift(&(&term * &t2), FRAC_BITS);
        if term.is_zero() {
            break;
        }
        sum += round_div(&term, &BigInt::from(2 * k + 1));
        k += 1;
        debug_assert!(k < 1000, "atanh series failed to converge");
    }
    (sum, k)
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.mant == other.mant
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mant.cmp(&other.mant)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(15))
    }
}

impl core::iter::Sum for Real {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Real {
        iter.fold(Real::zero(), |acc, v| acc.add(&v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rng::SplitMix64;
    use crate::exactnum::{int, rat};

    fn assert_close(r: &Real, want: f64, tol: f64) {
        let got = r.to_f64();
        assert!((got - want).abs() <= tol, "got {got}, want {want}");
    }

    #[test]
    fn ln_of_one_is_zero() {
        let r = Real::ln_rat(&rat(1, 1));
        assert!(r.to_rational().abs() < rat(1, 1_000_000_000));
    }

    #[test]
    fn ln_reference_values() {
        // independent high-precision constants
        assert_close(&Real::ln_rat(&rat(2, 1)), core::f64::consts::LN_2, 1e-14);
        assert_close(&Real::ln_rat(&rat(228, 1)), 5.429_345_628_954_441, 1e-12);
        assert_close(&Real::ln_rat(&rat(1, 3)), -(3.0f64.ln()), 1e-14);
        assert_close(&Real::ln2(), core::f64::consts::LN_2, 1e-14);
    }

    #[test]
    fn ln_error_bound_is_tiny() {
        for x in [rat(2, 1), rat(228, 1), rat(7, 13), rat(1_000_003, 17)] {
            let r = Real::ln_rat(&x);
            assert!(r.abs_error_bound() < rat(1, 1_000_000_000_000), "bound too large");
        }
    }

    #[test]
    fn ln_is_additive() {
        let mut rng = SplitMix64::new(0x10a);
        let tol = rat(1, 1_000_000_000);
        for _ in 0..100 {
            let a = rat(rng.below(10_000) as i64 + 1, rng.below(10_000) as i64 + 1);
            let b = rat(rng.below(10_000) as i64 + 1, rng.below(10_000) as i64 + 1);
            let lhs = Real::ln_rat(&(&a * &b));
            let rhs = Real::ln_rat(&a).add(&Real::ln_rat(&b));
            assert!(lhs.approx_eq(&rhs, &tol), "ln({a} * {b})");
        }
    }

    #[test]
    fn decimal_rendering() {
        let r = Real::from_rational(&rat(6435, 1));
        assert_eq!(r.to_decimal(5), "6.4350e3");
        let r = Real::ln_rat(&rat(6, 1));
        assert_eq!(r.to_decimal(15), "1.79175946922806e0");
        let r = Real::from_rational(&rat(-1, 8));
        assert_eq!(r.to_decimal(3), "-1.25e-1");
        assert_eq!(Real::zero().to_decimal(15), "0");
    }

    #[test]
    fn giant_arguments_reduce_cleanly() {
        // ln(3^200) = 200 ln 3
        let big = BigRational::from(int(3).pow(200));
        let got = Real::ln_rat(&big);
        assert_close(&got, 200.0 * 1.098_612_288_668_109_8, 1e-10);
    }

    #[test]
    fn mul_tracks_error() {
        let a = Real::ln_rat(&rat(2, 1));
        let b = a.mul_rational(&rat(6435, 1));
        assert!(b.abs_error_bound() < rat(1, 1_000_000_000_000));
        assert_close(&b, 6435.0 * core::f64::consts::LN_2, 1e-9);
    }
}
