//! Chow forms of the two implemented cycle families.
//!
//! A plane curve `V(F)` in `P^2` meets the pair of hyperplanes `u`, `v`
//! exactly when `F` vanishes at the point dual-incident to both, i.e. at
//! the cross product `u x v`. Substituting the cross-product coordinates
//! into `F` therefore produces the bidegree-`(d, d)` Chow form of the
//! curve. For zero-cycles cut out by a squarefree `f(t)` with points
//! `(1 : t : h(t))`, the Chow form is the u-resultant
//! `Res_t(f, u0 + u1 t + u2 h(t))`.
//!
//! The cross-product realization is validated against a vanishing oracle
//! in the tests instead of deriving it from the incidence variety.

use crate::exactnum::{BigInt, FieldElem, FiniteField};
use crate::multipoly::{sylvester_resultant, CoeffVector, Coeff, MHPoly, Shape};
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

/// Where a Chow point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    PlaneCurve,
    ZeroCycle,
    External,
}

/// Primitive, sign-normalized coefficient vector of a Chow form in the
/// canonical basis, with its `(r, s, d)` metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowPoint {
    vector: CoeffVector,
    provenance: Provenance,
}

impl ChowPoint {
    /// Wrap an externally supplied vector, normalizing it projectively.
    pub fn from_vector(mut vector: CoeffVector, provenance: Provenance) -> Result<ChowPoint> {
        vector.normalize_projective()?;
        Ok(ChowPoint { vector, provenance })
    }

    pub fn vector(&self) -> &CoeffVector {
        &self.vector
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn shape(&self) -> Shape {
        self.vector.shape()
    }

    /// The common block degree `d`.
    pub fn degree(&self) -> u32 {
        self.vector.degree()
    }

    pub fn to_poly(&self) -> MHPoly<BigInt> {
        self.vector.to_poly()
    }
}

/// The substitution images `X0 -> u1 v2 - u2 v1`, `X1 -> u2 v0 - u0 v2`,
/// `X2 -> u0 v1 - u1 v0` over the integers.
fn cross_images_int() -> [MHPoly<BigInt>; 3] {
    let shape = Shape::new(1, 2);
    let term = |sign: i64, uj: usize, vj: usize| {
        let mut u = [0u32; 3];
        let mut v = [0u32; 3];
        u[uj] = 1;
        v[vj] = 1;
        MHPoly::monomial(shape, BigInt::from(sign), &[&u, &v]).expect("cross term")
    };
    [
        term(1, 1, 2).add(&term(-1, 2, 1)).expect("X0 image"),
        term(1, 2, 0).add(&term(-1, 0, 2)).expect("X1 image"),
        term(1, 0, 1).add(&term(-1, 1, 0)).expect("X2 image"),
    ]
}

/// The same images with coefficients in a finite field.
fn cross_images_ff(field: &Arc<FiniteField>) -> [MHPoly<FieldElem>; 3] {
    let shape = Shape::new(1, 2);
    let term = |c: FieldElem, uj: usize, vj: usize| {
        let mut u = [0u32; 3];
        let mut v = [0u32; 3];
        u[uj] = 1;
        v[vj] = 1;
        MHPoly::monomial(shape, c, &[&u, &v]).expect("cross term")
    };
    let one = field.one();
    let neg = one.neg();
    [
        term(one.clone(), 1, 2).add(&term(neg.clone(), 2, 1)).expect("X0 image"),
        term(one.clone(), 2, 0).add(&term(neg.clone(), 0, 2)).expect("X1 image"),
        term(one, 0, 1).add(&term(neg, 1, 0)).expect("X2 image"),
    ]
}

fn check_plane_curve_input<C: Coeff>(f: &MHPoly<C>) -> Result<u32> {
    if f.shape() != Shape::new(0, 2) {
        return Err(Error::Structure(String::from(
            "plane-curve form must live in one block of three variables",
        )));
    }
    match f.multidegree() {
        Some(md) if md[0] >= 1 => Ok(md[0]),
        Some(_) => Err(Error::Domain(String::from("form must have degree >= 1"))),
        None => Err(Error::Structure(String::from(
            "form must be nonzero and homogeneous",
        ))),
    }
}

/// Chow form of the plane curve `V(F)` for a primitive integer form `F`
/// of degree `d`: a primitive bidegree-`(d, d)` form in the dual blocks
/// `u`, `v`.
///
/// The substitution has trivial kernel modulo every prime, so the content
/// of the result is provably 1 for primitive input; this is asserted and
/// a failure is an internal invariant violation.
pub fn chow_plane_curve(f: &MHPoly<BigInt>) -> Result<ChowPoint> {
    let d = check_plane_curve_input(f)?;
    if !f.content().is_one() {
        return Err(Error::Domain(String::from(
            "plane-curve form must be primitive",
        )));
    }
    let [i0, i1, i2] = cross_images_int();
    let sub = f.substitute(&[i0, i1, i2])?;
    if !sub.content().is_one() {
        return Err(Error::Invariant(String::from(
            "cross-product substitution changed the content",
        )));
    }
    let vector = sub.to_coeff_vector()?;
    if vector.degree() != d {
        return Err(Error::Invariant(format!(
            "Chow form has block degree {} instead of {d}",
            vector.degree()
        )));
    }
    ChowPoint::from_vector(vector, Provenance::PlaneCurve)
}

/// Chow form of a plane-curve fiber over a finite field, as an
/// unnormalized bidegree-`(d, d)` form.
pub fn chow_plane_curve_ff(f: &MHPoly<FieldElem>) -> Result<MHPoly<FieldElem>> {
    check_plane_curve_input(f)?;
    let field = f
        .terms()
        .next()
        .map(|(_, c)| Arc::clone(c.field()))
        .expect("nonzero form has a coefficient");
    let [i0, i1, i2] = cross_images_ff(&field);
    f.substitute(&[i0, i1, i2])
}

/// Chow form of the zero-cycle `{(1 : t : h(t)) : f(t) = 0}` for a
/// squarefree integer polynomial `f` of degree `d >= 1`: the primitive
/// part of `Res_t(f(t), u0 + u1 t + u2 h(t))`, a degree-`d` form in
/// `(u0, u1, u2)`. Only `h` modulo `f` matters for the cycle; degrees of
/// `h` at or above `d` merely scale the resultant, and the scale is
/// removed with the content.
pub fn chow_zero_cycle(f: &[BigInt], h: &[BigInt]) -> Result<ChowPoint> {
    let f = trim_ints(f);
    let h = trim_ints(h);
    if f.len() < 2 {
        return Err(Error::Domain(String::from(
            "zero-cycle polynomial must have degree >= 1",
        )));
    }
    let d = f.len() - 1;
    if d >= 2 {
        // squarefree <=> disc != 0 <=> Res(f, f') != 0
        let fp: Vec<BigInt> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        let disc = sylvester_resultant(&f, &fp)?;
        if Zero::is_zero(&disc) {
            return Err(Error::NotSquarefree);
        }
    }

    let shape = Shape::new(0, 2);
    let upoly = |var: usize| {
        let mut rows = [0u32; 3];
        rows[var] = 1;
        MHPoly::monomial(shape, BigInt::one(), &[&rows]).expect("dual variable")
    };
    let constant =
        |v: &BigInt| MHPoly::monomial(shape, v.clone(), &[&[0, 0, 0]]).expect("constant");
    let f_lifted: Vec<MHPoly<BigInt>> = f.iter().map(constant).collect();
    // g(t) = u0 + u1 t + u2 h(t)
    let g_len = 2.max(h.len());
    let mut g = vec![MHPoly::zero(shape); g_len];
    g[0] = upoly(0);
    g[1] = g[1].add(&upoly(1))?;
    for (j, c) in h.iter().enumerate() {
        g[j] = g[j].add(&upoly(2).mul_coeff(c))?;
    }
    let res = sylvester_resultant(&f_lifted, &g)?;
    if res.is_zero() {
        return Err(Error::Invariant(String::from(
            "u-resultant of a squarefree polynomial vanished",
        )));
    }
    let (_, prim) = res.content_primitive()?;
    let vector = prim.to_coeff_vector()?;
    if vector.degree() as usize != d {
        return Err(Error::Invariant(format!(
            "u-resultant has degree {} instead of {d}",
            vector.degree()
        )));
    }
    ChowPoint::from_vector(vector, Provenance::ZeroCycle)
}

fn trim_ints(c: &[BigInt]) -> Vec<BigInt> {
    let mut v = c.to_vec();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// The product map on coefficient vectors: multiply the underlying forms
/// and express the result in the basis of the summed degree. Exact, with
/// no normalization.
pub fn psi_product(a: &CoeffVector, b: &CoeffVector) -> Result<CoeffVector> {
    if a.shape() != b.shape() {
        return Err(Error::Structure(String::from(
            "coefficient vectors have different block structures",
        )));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain(String::from(
            "zero is not a projective point",
        )));
    }
    let prod = a.to_poly().mul(&b.to_poly())?;
    prod.to_coeff_vector()
}

/// Outcome of the specialization identity check at one prime.
#[derive(Debug, Clone)]
pub struct SpecializeReport {
    pub prime: u64,
    /// Whether reduction of the integer Chow form equals the Chow form of
    /// the reduced curve, up to a nonzero scalar.
    pub holds: bool,
}

/// Check the specialization identity at `p`: reducing the integral Chow
/// form of a primitive `F` mod `p` agrees (projectively) with the Chow
/// form computed over `F_p` from `F mod p`.
pub fn chow_specialize_check(f: &MHPoly<BigInt>, p: u64) -> Result<SpecializeReport> {
    check_plane_curve_input(f)?;
    if !f.content().is_one() {
        return Err(Error::Domain(String::from(
            "specialization check requires a primitive form",
        )));
    }
    let field = FiniteField::construct(p, 1)?;
    let f_red = f.reduce_mod(&field);
    if f_red.is_zero() {
        return Err(Error::VanishingReduction);
    }
    let reduced_chow = chow_plane_curve(f)?.to_poly().reduce_mod(&field);
    let chow_of_reduction = chow_plane_curve_ff(&f_red)?;
    Ok(SpecializeReport {
        prime: p,
        holds: reduced_chow.projectively_equal(&chow_of_reduction),
    })
}

#[cfg(test)]
mod tests;
