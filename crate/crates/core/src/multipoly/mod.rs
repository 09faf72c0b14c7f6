//! Sparse multihomogeneous polynomials over `Z` or a finite field.
//!
//! A polynomial lives in `r + 1` blocks of `s + 1` variables. Terms are
//! keyed by their exponent matrix, flattened row-major, and the canonical
//! term order is *descending* lexicographic on that flat vector (row 0
//! first, variable 0 of each row most significant). The canonical monomial
//! basis of each multidegree, the dense coefficient vectors, and all sign
//! normalizations are derived from this one order.

mod resultant;

pub use resultant::{sylvester_resultant, ResultantRing};

use crate::exactnum::{gcd, BigInt, FieldElem, FiniteField};
use crate::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use num_traits::{One, Signed, Zero};

/// Block structure: `blocks` = r + 1, `block_vars` = s + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    blocks: usize,
    block_vars: usize,
}

impl Shape {
    /// From the (r, s) convention: r + 1 blocks of s + 1 variables.
    pub fn new(r: usize, s: usize) -> Shape {
        Shape { blocks: r + 1, block_vars: s + 1 }
    }

    pub fn r(&self) -> usize {
        self.blocks - 1
    }

    pub fn s(&self) -> usize {
        self.block_vars - 1
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_vars(&self) -> usize {
        self.block_vars
    }

    pub fn total_vars(&self) -> usize {
        self.blocks * self.block_vars
    }
}

/// Flattened exponent matrix. Ordering is the canonical term order:
/// descending lexicographic on the flat vector, so the lexicographically
/// largest matrix is the *smallest* key and iteration of a `BTreeMap`
/// visits terms in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn from_flat(flat: Vec<u32>) -> Mono {
        Mono(flat)
    }

    pub fn flat(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, shape: Shape, block: usize, var: usize) -> u32 {
        self.0[block * shape.block_vars + var]
    }

    /// Per-block degree vector.
    pub fn row_sums(&self, shape: Shape) -> Vec<u32> {
        self.0
            .chunks(shape.block_vars)
            .map(|row| row.iter().sum())
            .collect()
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, other: &Mono) -> Mono {
        Mono(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    fn product(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: canonical order puts the lex-largest matrix first
        other.0.cmp(&self.0)
    }
}

/// Coefficient rings the polynomials are generic over: `Z` and `F_{p^k}`.
///
/// Elements of a field carry their field with them, so "zero" and "one"
/// are derived from an existing element rather than conjured statically.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Whether two elements live in the same ring; `add`/`mul` require it.
    fn same_ring(&self, other: &Self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Coeff for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn same_ring(&self, _other: &Self) -> bool {
        true
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coeff for FieldElem {
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.same_field(other)
    }
    fn add(&self, other: &Self) -> Self {
        FieldElem::add(self, other)
    }
    fn neg(&self) -> Self {
        FieldElem::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        FieldElem::mul(self, other)
    }
}

/// Sparse multihomogeneous polynomial. Zero coefficients are never stored
/// and at most one term exists per exponent matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MHPoly<C: Coeff> {
    shape: Shape,
    terms: BTreeMap<Mono, C>,
}

impl<C: Coeff> MHPoly<C> {
    pub fn zero(shape: Shape) -> MHPoly<C> {
        MHPoly { shape, terms: BTreeMap::new() }
    }

    /// Single-term polynomial; the exponent matrix is given by rows.
    pub fn monomial(shape: Shape, c: C, rows: &[&[u32]]) -> Result<MHPoly<C>> {
        let mut poly = MHPoly::zero(shape);
        poly.insert_term_rows(c, rows)?;
        Ok(poly)
    }

    /// Builder-style term insertion (adds to any existing term).
    pub fn with_term(mut self, c: C, rows: &[&[u32]]) -> Result<MHPoly<C>> {
        self.insert_term_rows(c, rows)?;
        Ok(self)
    }

    fn insert_term_rows(&mut self, c: C, rows: &[&[u32]]) -> Result<()> {
        if rows.len() != self.shape.blocks
            || rows.iter().any(|r| r.len() != self.shape.block_vars)
        {
            return Err(Error::Structure(format!(
                "exponent matrix must be {} rows of {} entries",
                self.shape.blocks, self.shape.block_vars
            )));
        }
        let flat: Vec<u32> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        self.add_term(Mono(flat), c);
        Ok(())
    }

    /// Insert a term, merging with any existing one; zero results drop out.
    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    /// Leading term in the canonical order.
    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next()
    }

    /// The multidegree if every term has the same per-block degree vector;
    /// `None` for the zero polynomial or a mixed sum.
    pub fn multidegree(&self) -> Option<Vec<u32>> {
        let mut it = self.terms.keys();
        let first = it.next()?.row_sums(self.shape);
        for m in it {
            if m.row_sums(self.shape) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Checks multihomogeneity against a declared multidegree.
    pub fn check_multidegree(&self, want: &[u32]) -> Result<()> {
        if want.len() != self.shape.blocks {
            return Err(Error::Structure(format!(
                "multidegree has {} entries for {} blocks",
                want.len(),
                self.shape.blocks
            )));
        }
        for m in self.terms.keys() {
            if m.row_sums(self.shape) != want {
                return Err(Error::Structure(format!(
                    "term {:?} does not have multidegree {:?}",
                    m.flat(),
                    want
                )));
            }
        }
        Ok(())
    }

    fn ring_compatible(&self, rhs: &MHPoly<C>) -> bool {
        match (self.terms.values().next(), rhs.terms.values().next()) {
            (Some(a), Some(b)) => a.same_ring(b),
            _ => true,
        }
    }

    fn check_compatible(&self, rhs: &MHPoly<C>) -> Result<()> {
        if self.shape != rhs.shape {
            return Err(Error::Structure(format!(
                "block structure mismatch: {:?} vs {:?}",
                self.shape, rhs.shape
            )));
        }
        if !self.ring_compatible(rhs) {
            return Err(Error::Structure(String::from(
                "coefficient rings differ",
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &MHPoly<C>) -> Result<MHPoly<C>> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MHPoly<C> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        MHPoly { shape: self.shape, terms }
    }

    pub fn sub(&self, rhs: &MHPoly<C>) -> Result<MHPoly<C>> {
        self.add(&rhs.neg())
    }

    /// Exact product; multidegrees add componentwise.
    pub fn mul(&self, rhs: &MHPoly<C>) -> Result<MHPoly<C>> {
        self.check_compatible(rhs)?;
        let mut out = MHPoly::zero(self.shape);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                out.add_term(ma.product(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn mul_coeff(&self, c: &C) -> MHPoly<C> {
        if c.is_zero() {
            return MHPoly::zero(self.shape);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, old)| (m.clone(), old.mul(c)))
            .collect();
        MHPoly { shape: self.shape, terms }
    }

    /// Substitute one polynomial per variable (flattened order) and expand.
    ///
    /// All nonzero images must share a block structure and a single
    /// multidegree, so that a multihomogeneous input stays multihomogeneous.
    pub fn substitute(&self, images: &[MHPoly<C>]) -> Result<MHPoly<C>> {
        if images.len() != self.shape.total_vars() {
            return Err(Error::Structure(format!(
                "{} images supplied for {} variables",
                images.len(),
                self.shape.total_vars()
            )));
        }
        let mut target: Option<(Shape, Vec<u32>)> = None;
        for img in images.iter().filter(|i| !i.is_zero()) {
            let md = img.multidegree().ok_or_else(|| {
                Error::Structure(String::from("substitution image is not multihomogeneous"))
            })?;
            match &target {
                None => target = Some((img.shape, md)),
                Some((shape, want)) => {
                    if img.shape != *shape || md != *want {
                        return Err(Error::Structure(String::from(
                            "substitution images disagree in shape or multidegree",
                        )));
                    }
                }
            }
        }
        let out_shape = match &target {
            Some((shape, _)) => *shape,
            None => self.shape, // all images zero: the result is zero anyway
        };

        // memoized powers of each image
        let mut powers: Vec<Vec<MHPoly<C>>> = images.iter().map(|i| vec![i.clone()]).collect();
        let mut out = MHPoly::zero(out_shape);
        for (m, c) in self.terms.iter() {
            let mut acc: Option<MHPoly<C>> = None;
            let mut vanished = false;
            for (var, &e) in m.flat().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if images[var].is_zero() {
                    vanished = true;
                    break;
                }
                while powers[var].len() < e as usize {
                    let next = powers[var].last().unwrap().mul(&images[var])?;
                    powers[var].push(next);
                }
                let factor = &powers[var][e as usize - 1];
                acc = Some(match acc {
                    None => factor.clone(),
                    Some(a) => a.mul(factor)?,
                });
            }
            if vanished {
                continue;
            }
            let term_val = match acc {
                Some(a) => a.mul_coeff(c),
                None => {
                    // constant term of f
                    let flat = vec![0u32; out_shape.total_vars()];
                    let mut p = MHPoly::zero(out_shape);
                    p.add_term(Mono(flat), c.clone());
                    p
                }
            };
            out = out.add(&term_val)?;
        }
        Ok(out)
    }
}

impl MHPoly<BigInt> {
    /// Convenience constructor for forms in one block of three variables.
    pub fn plane_form(terms: &[(i64, [u32; 3])]) -> MHPoly<BigInt> {
        let shape = Shape::new(0, 2);
        let mut poly = MHPoly::zero(shape);
        for &(c, exps) in terms {
            poly.add_term(Mono(exps.to_vec()), BigInt::from(c));
        }
        poly
    }

    /// Content (gcd of coefficients, positive) and primitive part with a
    /// positive leading coefficient; `content * primitive = ±f`.
    pub fn content_primitive(&self) -> Result<(BigInt, MHPoly<BigInt>)> {
        if self.is_zero() {
            return Err(Error::Domain(String::from(
                "content of the zero polynomial",
            )));
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            content = gcd(&content, c);
            if content.is_one() {
                break;
            }
        }
        let lead_negative = self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        let divisor = if lead_negative { -&content } else { content.clone() };
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c / &divisor))
            .collect();
        Ok((content, MHPoly { shape: self.shape, terms }))
    }

    /// Content of the polynomial without the primitive part.
    pub fn content(&self) -> BigInt {
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            content = gcd(&content, c);
        }
        content
    }

    /// Coefficient-wise reduction into a finite field (zero terms drop out).
    pub fn reduce_mod(&self, field: &Arc<FiniteField>) -> MHPoly<FieldElem> {
        let mut out = MHPoly::zero(self.shape);
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), field.from_bigint(c));
        }
        out
    }

    /// Exact division: `Some(q)` with `self = q * rhs`, or `None` if `rhs`
    /// does not divide `self` over the integers.
    pub fn exact_div(&self, rhs: &MHPoly<BigInt>) -> Option<MHPoly<BigInt>> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MHPoly::zero(self.shape));
        }
        if self.shape != rhs.shape {
            return None;
        }
        let (lg, cg) = {
            let (m, c) = rhs.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = MHPoly::zero(self.shape);
        loop {
            let (lr, cr) = match rem.leading() {
                None => break,
                Some((m, c)) => (m.clone(), c.clone()),
            };
            if !lg.divides(&lr) {
                return None;
            }
            let (q, r) = num_integer::Integer::div_rem(&cr, &cg);
            if !Zero::is_zero(&r) {
                return None;
            }
            let qm = lg.quotient(&lr);
            let mut qpoly = MHPoly::zero(self.shape);
            qpoly.add_term(qm.clone(), q.clone());
            quot.add_term(qm, q);
            rem = rem.sub(&qpoly.mul(rhs).ok()?).ok()?;
        }
        Some(quot)
    }

    /// Dense coordinates in the canonical basis of a uniform multidegree
    /// `(x, ..., x)`; errors if the polynomial is zero or mixed.
    pub fn to_coeff_vector(&self) -> Result<CoeffVector> {
        let md = self.multidegree().ok_or_else(|| {
            Error::Structure(String::from(
                "coefficient vector requires a nonzero polynomial of uniform multidegree",
            ))
        })?;
        let x = md[0];
        if md.iter().any(|&v| v != x) {
            return Err(Error::Structure(format!(
                "multidegree {md:?} is not of the form (x, ..., x)"
            )));
        }
        let basis = canonical_basis_uniform(self.shape, x);
        let index: BTreeMap<&Mono, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut entries = vec![BigInt::zero(); basis.len()];
        for (m, c) in self.terms.iter() {
            let i = *index
                .get(m)
                .expect("term of the declared multidegree is in the basis");
            entries[i] = c.clone();
        }
        Ok(CoeffVector { shape: self.shape, degree: x, entries })
    }
}

impl MHPoly<FieldElem> {
    /// Leading-coefficient normalization over a field: scales so that the
    /// first coefficient in canonical order is 1. `None` for zero.
    pub fn monic(&self) -> Option<MHPoly<FieldElem>> {
        let (_, lead) = self.leading()?;
        let inv = lead.inv().expect("leading coefficient of nonzero form");
        Some(self.mul_coeff(&inv))
    }

    /// Equality up to a nonzero scalar of the field.
    pub fn projectively_equal(&self, rhs: &MHPoly<FieldElem>) -> bool {
        match (self.monic(), rhs.monic()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => true,
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// canonical basis and dense coefficient vectors
// ---------------------------------------------------------------------------

/// All per-block exponent rows of degree `total` over `parts` variables,
/// in descending lexicographic order.
fn compositions_desc(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for rest in compositions_desc(total - first, parts - 1) {
            let mut row = Vec::with_capacity(parts);
            row.push(first);
            row.extend(rest);
            out.push(row);
        }
    }
    out
}

/// The canonical monomial basis of multidegree `(x, ..., x)`, leading
/// monomial first.
pub fn canonical_basis_uniform(shape: Shape, x: u32) -> Vec<Mono> {
    let rows = compositions_desc(x, shape.block_vars);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = vec![0; shape.blocks];
    loop {
        let flat: Vec<u32> = stack
            .iter()
            .flat_map(|&i| rows[i].iter().copied())
            .collect();
        out.push(Mono(flat));
        // odometer over block choices, last block least significant
        let mut pos = shape.blocks;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            stack[pos] += 1;
            if stack[pos] < rows.len() {
                break;
            }
            stack[pos] = 0;
        }
    }
}

/// Number of basis monomials of multidegree `(x, ..., x)`:
/// `binom(x+s, s)^(r+1)`.
pub fn basis_len(shape: Shape, x: u32) -> u128 {
    let s = shape.s() as u128;
    let mut b: u128 = 1;
    for i in 1..=s {
        b = b * (x as u128 + i) / i;
    }
    let mut out: u128 = 1;
    for _ in 0..shape.blocks {
        out = out.saturating_mul(b);
    }
    out
}

/// Dense integer coordinates of a form in the canonical basis `B_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffVector {
    shape: Shape,
    degree: u32,
    entries: Vec<BigInt>,
}

impl CoeffVector {
    pub fn new(shape: Shape, degree: u32, entries: Vec<BigInt>) -> Result<CoeffVector> {
        let want = basis_len(shape, degree);
        if entries.len() as u128 != want {
            return Err(Error::Structure(format!(
                "coefficient vector has {} entries, basis has {}",
                entries.len(),
                want
            )));
        }
        Ok(CoeffVector { shape, degree, entries })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Back to the sparse polynomial.
    pub fn to_poly(&self) -> MHPoly<BigInt> {
        let basis = canonical_basis_uniform(self.shape, self.degree);
        let mut out = MHPoly::zero(self.shape);
        for (m, c) in basis.into_iter().zip(self.entries.iter()) {
            out.add_term(m, c.clone());
        }
        out
    }

    /// Normalize to a projective representative: divide by the content and
    /// flip the sign so the first nonzero entry is positive.
    pub fn normalize_projective(&mut self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::Domain(String::from(
                "the zero vector is not a projective point",
            )));
        }
        let mut content = BigInt::zero();
        for c in &self.entries {
            content = gcd(&content, c);
            if content.is_one() {
                break;
            }
        }
        let first_neg = self
            .entries
            .iter()
            .find(|c| !Zero::is_zero(*c))
            .map(|c| c.is_negative())
            .unwrap_or(false);
        if first_neg {
            content = -content;
        }
        for c in self.entries.iter_mut() {
            *c = &*c / &content;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// display
// ---------------------------------------------------------------------------

fn var_name(shape: Shape, block: usize, var: usize) -> String {
    if shape.blocks == 1 {
        format!("X{var}")
    } else if shape.blocks <= 3 {
        format!("{}{var}", ['u', 'v', 'w'][block])
    } else {
        format!("x{block}_{var}")
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for MHPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (var, &e) in m.flat().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let b = var / self.shape.block_vars;
                let v = var % self.shape.block_vars;
                write!(f, "*{}", var_name(self.shape, b, v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
