//! The closed-form quantities behind the decomposability bound: ranks of
//! the symmetric-power bundles, harmonic constants, degree and height of
//! the locus of decomposable forms, and the assembled bound itself.
//!
//! Every logarithm argument is built as an exact rational before a single
//! log evaluation, so rounding never compounds.

use crate::exactnum::{binomial, BigInt, BigRat, Real};
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use num_traits::{One, Zero};

/// Parameter set of the bound: ambient dimension `s`, cycle degree `d`,
/// fiber dimension `r`, component degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundParams {
    pub s: u32,
    pub d: u32,
    pub r: u32,
    pub n: u32,
}

impl BoundParams {
    pub fn new(s: u32, d: u32, r: u32, n: u32) -> Result<BoundParams> {
        if s < 2 || d < 2 {
            return Err(Error::Domain(format!(
                "bound parameters need s, d >= 2 (got s = {s}, d = {d})"
            )));
        }
        if n < 1 || n > d - 1 {
            return Err(Error::Domain(format!(
                "component degree n = {n} outside 1..={}",
                d - 1
            )));
        }
        // keeps every rank binomial inside the exact-computation caps:
        // binom(x+s, s) iterates min(x, s) <= min(d, s) times
        if d.min(s) > 10_000 || d as u64 + s as u64 > 100_000 || r > 10_000 {
            return Err(Error::CostCap(format!(
                "parameters (s = {s}, d = {d}, r = {r}) beyond the exact-evaluation range"
            )));
        }
        Ok(BoundParams { s, d, r, n })
    }
}

/// `N_{x,r,s} = binom(x+s, s)^(r+1) - 1`, the projective dimension of the
/// space of forms of multidegree `(x, ..., x)`.
///
/// `min(x, s)` must stay within the exact binomial cap; [`BoundParams`]
/// validation guarantees this for every parameter set it accepts.
pub fn rank_n(x: u32, r: u32, s: u32) -> BigInt {
    let b = binomial(&BigInt::from(x + s), &BigInt::from(s)).expect("rank binomial in range");
    b.pow(r + 1) - BigInt::one()
}

/// The harmonic constant `sigma_x = (1/2)(x+1) sum_{m=2}^{x+1} 1/m`.
///
/// Exact rational; the partial sum is capped at `x <= 10000` because its
/// reduced denominator grows like `e^x`.
pub fn sigma(x: u64) -> Result<BigRat> {
    if x > 10_000 {
        return Err(Error::CostCap(format!(
            "sigma({x}) exceeds the exact harmonic-sum cap of 10000"
        )));
    }
    let mut sum = BigRat::zero();
    for m in 2..=x + 1 {
        sum += BigRat::new(BigInt::one(), BigInt::from(m));
    }
    Ok(sum * BigRat::new(BigInt::from(x + 1), BigInt::from(2u8)))
}

fn delta_factor(params: &BoundParams) -> BigRat {
    if params.n * 2 == params.d {
        BigRat::new(BigInt::one(), BigInt::from(2u8))
    } else {
        BigRat::one()
    }
}

/// Degree of the image of the multiplication map:
/// `1/(1 + delta_{n,d-n}) * binom(N_n + N_{d-n}, N_n)`.
///
/// An integer whenever `n != d - n`; the halved central binomial is still
/// an integer, but the exact rational is returned either way.
pub fn deg_w(params: &BoundParams) -> Result<BigRat> {
    let n_n = rank_n(params.n, params.r, params.s);
    let n_dn = rank_n(params.d - params.n, params.r, params.s);
    let b = binomial(&(&n_n + &n_dn), &n_n)?;
    Ok(delta_factor(params) * BigRat::from(b))
}

/// Upper bound for the height of the decomposable locus:
/// `1/(1+delta) * (N_n + N_{d-n} + 1)/2 * binom(N_n + N_{d-n}, N_n)
///  * log((d+1)^{3(r+1)(s+1)} (N_n+1)(N_{d-n}+1) / (N_n + N_{d-n} + 1))`.
pub fn h_w_bound(params: &BoundParams) -> Result<Real> {
    let n_n = rank_n(params.n, params.r, params.s);
    let n_dn = rank_n(params.d - params.n, params.r, params.s);
    let total = &n_n + &n_dn + BigInt::one();
    let b = binomial(&(&n_n + &n_dn), &n_n)?;
    let factor =
        delta_factor(params) * BigRat::new(total.clone(), BigInt::from(2u8)) * BigRat::from(b);
    let exponent = 3u64 * (params.r as u64 + 1) * (params.s as u64 + 1);
    let base = BigInt::from(params.d + 1);
    if exponent * base.bits() > 100_000_000 {
        return Err(Error::CostCap(format!(
            "(d+1)^{exponent} is too large to materialize exactly"
        )));
    }
    let power = base.pow(exponent as u32);
    let arg = BigRat::from(power * (n_n + 1) * (n_dn + 1)) / BigRat::from(total);
    debug_assert!(arg > BigRat::one(), "log argument must exceed 1");
    Ok(Real::ln_rat(&arg).mul_rational(&factor))
}

/// Height of the product of form spaces under the product metric:
/// `binom(N_n + N_{d-n}, N_n) * (sigma_{N_{d-n}} + sigma_{N_n})`.
pub fn product_metric_height(params: &BoundParams) -> Result<Real> {
    let n_n = rank_n(params.n, params.r, params.s);
    let n_dn = rank_n(params.d - params.n, params.r, params.s);
    let b = binomial(&(&n_n + &n_dn), &n_n)?;
    let to_u64 = |v: &BigInt| -> Result<u64> {
        u64::try_from(v)
            .map_err(|_| Error::CostCap(String::from("rank too large for an exact harmonic sum")))
    };
    let sig = sigma(to_u64(&n_dn)?)? + sigma(to_u64(&n_n)?)?;
    Ok(Real::from_rational(&(sig * BigRat::from(b))))
}

/// The transfer offset between the point height of the Chow form and the
/// cycle height: `d * (sigma_r + (r+1) log(s+1))`.
pub fn height_offset(d: u32, r: u32, s: u32) -> Result<Real> {
    let sig = sigma(r as u64)?;
    let log = Real::ln_rat(&BigRat::from(BigInt::from(s + 1)));
    let d_rat = BigRat::from(BigInt::from(d));
    Ok(log
        .mul_rational(&BigRat::from(BigInt::from(r + 1)))
        .add(&Real::from_rational(&sig))
        .mul_rational(&d_rat))
}

/// Which height the caller supplied to [`bezout_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightInput {
    /// The computable point height of the Chow form; used as is.
    ChowPoint,
    /// The cycle height; the transfer offset is added first.
    Cycle,
}

/// Itemized evaluation of the decomposability bound.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub params: BoundParams,
    pub n_n: BigInt,
    pub n_dn: BigInt,
    pub n_d: BigInt,
    /// Exact degree of the decomposable locus (integer or half-integer).
    pub deg_w: BigRat,
    /// The height handed in, before any transfer.
    pub h_input: Real,
    /// How `h_input` was interpreted.
    pub height_input: HeightInput,
    /// Transfer offset; zero unless the input was a cycle height.
    pub offset: Real,
    /// The height actually multiplied into the bound.
    pub h_used: Real,
    pub height_term: Real,
    pub h_w_bound: Real,
    pub log2_term: Real,
    pub total: Real,
}

/// Assemble the bound
/// `deg_W * h + h_W_bound + (1/2) deg_W (N_d + 1) log 2`,
/// itemizing every term. `h` must be nonnegative; a cycle height is
/// first shifted by [`height_offset`].
pub fn bezout_bound(
    h: &Real,
    params: &BoundParams,
    height_input: HeightInput,
) -> Result<BoundReport> {
    if h.is_negative() {
        return Err(Error::Domain(String::from("height must be nonnegative")));
    }
    let n_n = rank_n(params.n, params.r, params.s);
    let n_dn = rank_n(params.d - params.n, params.r, params.s);
    let n_d = rank_n(params.d, params.r, params.s);
    let deg_w = deg_w(params)?;
    let h_w = h_w_bound(params)?;
    let offset = match height_input {
        HeightInput::ChowPoint => Real::zero(),
        HeightInput::Cycle => height_offset(params.d, params.r, params.s)?,
    };
    let h_used = h.add(&offset);
    let height_term = h_used.mul_rational(&deg_w);
    let log2_scale = &deg_w * BigRat::from(&n_d + BigInt::one()) / BigRat::from(BigInt::from(2u8));
    let log2_term = Real::ln2().mul_rational(&log2_scale);
    let total = height_term.add(&h_w).add(&log2_term);
    Ok(BoundReport {
        params: *params,
        n_n,
        n_dn,
        n_d,
        deg_w,
        h_input: h.clone(),
        height_input,
        offset,
        h_used,
        height_term,
        h_w_bound: h_w,
        log2_term,
        total,
    })
}
