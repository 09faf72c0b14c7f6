//! Factorization machinery over finite fields: complete univariate
//! factorization over `F_p`, absolute-irreducibility certification of
//! plane-curve fibers, and the search for decompositions into components
//! of prescribed degrees over extensions `F_{p^k}`.

mod decomp;

pub use decomp::{
    abs_irred_mod_p, decomposition_oracle, find_decomposition, lift_to_extension, DecompOutcome,
    DecompositionWitness, IrredOutcome, DEFAULT_COST_CAP,
};

use crate::exactnum::rng::SplitMix64;
use crate::exactnum::FpPoly;
use crate::{Error, Result};
use alloc::string::String;
use alloc::vec::Vec;

/// Complete factorization of a univariate polynomial over `F_p`:
/// `lead * prod factor_i^mult_i` with monic irreducible, pairwise distinct
/// factors, sorted by (degree, coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    pub lead: u64,
    pub factors: Vec<(FpPoly, u32)>,
}

impl FactorList {
    /// Re-multiply the factorization.
    pub fn product(&self, p: u64) -> FpPoly {
        let mut acc = FpPoly::one(p).mul_scalar(self.lead);
        for (f, mult) in &self.factors {
            for _ in 0..*mult {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// Distinct-degree plus equal-degree (Cantor-Zassenhaus) factorization.
/// The randomized splitting draws from a splitmix64 stream seeded by the
/// caller, so identical seeds give identical runs; the returned list is
/// sorted canonically and therefore seed-independent.
pub fn univ_factor(f: &FpPoly, seed: u64) -> Result<FactorList> {
    if f.is_zero() {
        return Err(Error::Domain(String::from("factor of the zero polynomial")));
    }
    let lead = f.leading();
    let mut rng = SplitMix64::new(seed);
    let mut factors: Vec<(FpPoly, u32)> = Vec::new();
    factor_monic(&f.monic(), 1, &mut factors, &mut rng);
    // merge duplicates, then sort canonically
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
    });
    let mut merged: Vec<(FpPoly, u32)> = Vec::new();
    for (q, m) in factors {
        match merged.last_mut() {
            Some((prev, pm)) if *prev == q => *pm += m,
            _ => merged.push((q, m)),
        }
    }
    Ok(FactorList { lead, factors: merged })
}

fn factor_monic(f: &FpPoly, mult: u32, out: &mut Vec<(FpPoly, u32)>, rng: &mut SplitMix64) {
    let p = f.modulus_prime();
    match f.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push((f.clone(), mult));
            return;
        }
        _ => {}
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = g(x^p) = g*(x)^p since coefficients are fixed by Frobenius
        let root = pth_root(f);
        factor_monic(&root, mult * p as u32, out, rng);
        return;
    }
    let repeated = f.gcd(&df);
    let squarefree = f.div_rem(&repeated).0;
    if squarefree.degree() > Some(0) {
        distinct_degree(&squarefree, mult, out, rng);
    }
    if repeated.degree() > Some(0) {
        factor_monic(&repeated, mult, out, rng);
    }
}

/// For f with zero derivative in characteristic p: the unique g with
/// g(x)^p = f(x), read off as g_i = f_{ip}.
fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.modulus_prime() as usize;
    let coeffs: Vec<u64> = f
        .coeffs()
        .iter()
        .step_by(p)
        .copied()
        .collect();
    FpPoly::from_raw(f.modulus_prime(), coeffs)
}

fn distinct_degree(f: &FpPoly, mult: u32, out: &mut Vec<(FpPoly, u32)>, rng: &mut SplitMix64) {
    let p = f.modulus_prime();
    let mut rest = f.clone();
    let mut frob = FpPoly::x(p); // x^(p^d) mod rest, updated per degree
    let mut d = 0usize;
    while rest.degree() > Some(0) {
        d += 1;
        if rest.degree() < Some(2 * d) {
            // whatever is left is a single irreducible
            out.push((rest.monic(), mult));
            return;
        }
        frob = frob.pow_mod(p, &rest);
        let split = frob.sub(&FpPoly::x(p)).gcd(&rest);
        if split.degree() > Some(0) {
            equal_degree(&split, d, mult, out, rng);
            rest = rest.div_rem(&split).0;
            frob = frob.div_rem(&rest).1;
        }
    }
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
/// the common degree `d`.
fn equal_degree(
    f: &FpPoly,
    d: usize,
    mult: u32,
    out: &mut Vec<(FpPoly, u32)>,
    rng: &mut SplitMix64,
) {
    let p = f.modulus_prime();
    if f.degree() == Some(d) {
        out.push((f.monic(), mult));
        return;
    }
    let n = f.degree().expect("nonconstant") as u64;
    loop {
        // random element of F_p[x]/(f)
        let coeffs: Vec<u64> = (0..n).map(|_| rng.below(p)).collect();
        let a = FpPoly::from_raw(p, coeffs);
        if a.degree().is_none() {
            continue;
        }
        let g0 = a.gcd(f);
        if g0.degree() > Some(0) && g0.degree() < f.degree() {
            let rest = f.div_rem(&g0).0;
            equal_degree(&g0, d, mult, out, rng);
            equal_degree(&rest, d, mult, out, rng);
            return;
        }
        let candidate = if p == 2 {
            // trace map: a + a^2 + a^4 + ... + a^(2^(d-1))
            let mut tr = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = cur.mul(&cur).div_rem(f).1;
                tr = tr.add(&cur);
            }
            tr
        } else {
            // a^((p^d - 1)/2) - 1 via the norm-style ladder, which keeps
            // every exponent within u64
            let mut norm = a.clone();
            let mut frob = a.clone();
            for _ in 1..d {
                frob = frob.pow_mod(p, f);
                norm = norm.mul(&frob).div_rem(f).1;
            }
            let b = norm.pow_mod((p - 1) / 2, f);
            b.sub(&FpPoly::one(p))
        };
        let g = candidate.gcd(f);
        if g.degree() > Some(0) && g.degree() < f.degree() {
            let rest = f.div_rem(&g).0;
            equal_degree(&g, d, mult, out, rng);
            equal_degree(&rest, d, mult, out, rng);
            return;
        }
    }
}
