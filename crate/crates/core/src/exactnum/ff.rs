//! Finite fields `F_p` and `F_{p^k}` with an explicitly constructed
//! irreducible modulus.
//!
//! The modulus is found by a deterministic ascending search over monic
//! polynomials, so a field constructed twice (or on two machines) is the
//! same field, and every serialized decomposition witness is reproducible.
//!
//! Elements are residue-class polynomials of degree `< k` with digits in
//! `[0, p)`. For the enumeration-heavy decomposition searches there is a
//! parallel "packed" representation: an element is a single `u64` holding
//! its digits base `p`. Packed arithmetic is only available when `p^k`
//! fits in 63 bits and `p < 2^30`, which the search cost caps guarantee.

use crate::{Error, Result};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::primes::is_prime;

/// Hard cap on the extension degree; decomposition searches never need
/// more than `k = d` and the cost of element enumeration beyond this is
/// prohibitive anyway.
pub const MAX_EXTENSION_DEGREE: usize = 12;

const MAX_K: usize = MAX_EXTENSION_DEGREE;

// ---------------------------------------------------------------------------
// univariate polynomials over the prime field
// ---------------------------------------------------------------------------

/// Dense univariate polynomial over `F_p`, coefficients ascending.
///
/// The zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: &[i64]) -> FpPoly {
        let c = coeffs
            .iter()
            .map(|&v| v.rem_euclid(p as i64) as u64)
            .collect();
        FpPoly { p, coeffs: c }.trimmed()
    }

    pub fn from_raw(p: u64, coeffs: Vec<u64>) -> FpPoly {
        let c = coeffs.into_iter().map(|v| v % p).collect();
        FpPoly { p, coeffs: c }.trimmed()
    }

    fn trimmed(mut self) -> FpPoly {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![1 % p] }.trimmed()
    }

    pub fn x(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![0, 1] }
    }

    pub fn modulus_prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, rhs: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = vec![0u64; n];
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = (self.coeff(i) + rhs.coeff(i)) % self.p;
        }
        FpPoly { p: self.p, coeffs: c }.trimmed()
    }

    pub fn sub(&self, rhs: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = vec![0u64; n];
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = (self.coeff(i) + self.p - rhs.coeff(i) % self.p) % self.p;
        }
        FpPoly { p: self.p, coeffs: c }.trimmed()
    }

    pub fn mul(&self, rhs: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let prod = mul_mod(a, b, self.p);
                c[i + j] = (c[i + j] + prod) % self.p;
            }
        }
        FpPoly { p: self.p, coeffs: c }.trimmed()
    }

    pub fn mul_scalar(&self, s: u64) -> FpPoly {
        let s = s % self.p;
        let c = self.coeffs.iter().map(|&a| mul_mod(a, s, self.p)).collect();
        FpPoly { p: self.p, coeffs: c }.trimmed()
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, div: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        if self.degree().is_none_or(|d| d < dd) {
            return (FpPoly::zero(self.p), self.clone());
        }
        let p = self.p;
        let lead_inv = inv_mod(div.leading(), p);
        let mut rem = self.coeffs.clone();
        let dn = self.degree().unwrap();
        let mut quot = vec![0u64; dn - dd + 1];
        for i in (0..=dn - dd).rev() {
            let top = rem[i + dd] % p;
            if top == 0 {
                continue;
            }
            let q = mul_mod(top, lead_inv, p);
            quot[i] = q;
            for (j, &dc) in div.coeffs.iter().enumerate() {
                let sub = mul_mod(q, dc, p);
                rem[i + j] = (rem[i + j] + p - sub) % p;
            }
        }
        (
            FpPoly { p, coeffs: quot }.trimmed(),
            FpPoly { p, coeffs: rem }.trimmed(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.leading() == 1 {
            return self.clone();
        }
        self.mul_scalar(inv_mod(self.leading(), self.p))
    }

    /// `self^exp mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u64, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p);
        let mut base = self.div_rem(m).1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).div_rem(m).1;
            }
            base = base.mul(&base).div_rem(m).1;
            exp >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, (i as u64) % self.p, self.p))
            .collect();
        FpPoly { p: self.p, coeffs: c }.trimmed()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mul_mod(acc, x, self.p) + c) % self.p;
        }
        acc
    }

    /// Irreducibility over `F_p` via the gcd criterion: a polynomial of
    /// degree `k >= 1` with no irreducible factor of degree `<= k/2` is
    /// irreducible, and `gcd(x^{p^i} - x, m)` collects exactly the factors
    /// of degree dividing `i`.
    pub fn is_irreducible(&self) -> bool {
        let k = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(k) => k,
        };
        if self.coeff(0) == 0 {
            return false; // divisible by x
        }
        let m = self.monic();
        let mut t = FpPoly::x(self.p);
        for _ in 1..=k / 2 {
            t = t.pow_mod(self.p, &m);
            let g = t.sub(&FpPoly::x(self.p)).gcd(&m);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on integers
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert!(r0 == 1, "inverse of non-unit {a} mod {p}");
    t0.rem_euclid(p as i128) as u64
}

// ---------------------------------------------------------------------------
// the field itself
// ---------------------------------------------------------------------------

/// Precomputed operation tables for tiny fields (`q <= 128`), where the
/// enumeration searches spend nearly all of their time.
struct SmallTables {
    q: usize,
    mul: Vec<u64>,
    add: Vec<u64>,
    neg: Vec<u64>,
}

impl core::fmt::Debug for SmallTables {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "SmallTables(q = {})", self.q)
    }
}

/// A finite field `F_{p^k}`, `p` prime, presented as `F_p[x]/(m)` for a
/// monic irreducible `m` of degree `k`.
#[derive(Debug)]
pub struct FiniteField {
    p: u64,
    k: usize,
    /// Monic modulus, ascending coefficients, length `k + 1`.
    modulus: Vec<u64>,
    /// `p^k` when it fits.
    order_u64: Option<u64>,
    /// Powers `p^0..p^k` when the order fits, for packed codes.
    p_pows: Vec<u64>,
    tables: Option<SmallTables>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// Construct `F_{p^k}`. The modulus for `k >= 2` is the first monic
    /// irreducible polynomial of degree `k` in the ascending enumeration
    /// that counts the lower coefficient tuple `(c_0, ..., c_{k-1})` as a
    /// little-endian base-`p` integer. For `k = 1` the modulus is `x`.
    pub fn construct(p: u64, k: usize) -> Result<Arc<FiniteField>> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if k == 0 || k > MAX_EXTENSION_DEGREE {
            return Err(Error::CostCap(format!(
                "extension degree {k} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            Self::first_irreducible(p, k)?
        };
        let order_u64 = {
            let mut acc: Option<u64> = Some(1);
            for _ in 0..k {
                acc = acc.and_then(|v| v.checked_mul(p));
            }
            acc
        };
        let p_pows = match order_u64 {
            Some(_) => {
                let mut pows = Vec::with_capacity(k + 1);
                let mut v = 1u64;
                for _ in 0..=k {
                    pows.push(v);
                    v = v.saturating_mul(p);
                }
                pows
            }
            None => Vec::new(),
        };
        let mut field = FiniteField {
            p,
            k,
            modulus,
            order_u64,
            p_pows,
            tables: None,
        };
        if let Some(q) = field.order_u64 {
            if field.supports_packed() && q <= 128 {
                let qs = q as usize;
                let mut mul = vec![0u64; qs * qs];
                let mut add = vec![0u64; qs * qs];
                let mut neg = vec![0u64; qs];
                for a in 0..q {
                    neg[a as usize] = field.neg_code_raw(a);
                    for b in 0..q {
                        mul[a as usize * qs + b as usize] = field.mul_code_raw(a, b);
                        add[a as usize * qs + b as usize] = field.add_code_raw(a, b);
                    }
                }
                field.tables = Some(SmallTables { q: qs, mul, add, neg });
            }
        }
        Ok(Arc::new(field))
    }

    fn first_irreducible(p: u64, k: usize) -> Result<Vec<u64>> {
        // candidates are m = x^k + c_{k-1} x^{k-1} + ... + c_0
        let mut idx: u128 = 0;
        let total: u128 = (p as u128).pow(k as u32);
        while idx < total {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut v = idx;
            for _ in 0..k {
                coeffs.push((v % p as u128) as u64);
                v /= p as u128;
            }
            coeffs.push(1);
            let cand = FpPoly::from_raw(p, coeffs.clone());
            if cand.is_irreducible() {
                return Ok(coeffs);
            }
            idx += 1;
        }
        Err(Error::Invariant(format!(
            "no irreducible of degree {k} over F_{p}"
        )))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> usize {
        self.k
    }

    /// Ascending modulus coefficients, length `k + 1`, leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^k` as a big integer.
    pub fn order(&self) -> BigInt {
        BigInt::from(self.p).pow(self.k as u32)
    }

    /// `p^k` when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order_u64
    }

    /// True when packed `u64` codes may be used for elements.
    pub fn supports_packed(&self) -> bool {
        self.order_u64.is_some() && self.p < (1 << 30)
    }

    // -- element constructors ------------------------------------------------

    pub fn zero(self: &Arc<Self>) -> FieldElem {
        FieldElem {
            field: Arc::clone(self),
            digits: vec![0; self.k],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElem {
        let mut digits = vec![0; self.k];
        digits[0] = 1 % self.p;
        FieldElem { field: Arc::clone(self), digits }
    }

    /// Residue class of the variable `x` (a root of the modulus). In the
    /// prime field this is zero.
    pub fn gen(self: &Arc<Self>) -> FieldElem {
        let mut digits = vec![0; self.k];
        if self.k > 1 {
            digits[1] = 1;
        }
        FieldElem { field: Arc::clone(self), digits }
    }

    /// Element from digit list (low degree first); shorter lists are
    /// zero-padded, digits are reduced mod `p`.
    pub fn elem(self: &Arc<Self>, digits: &[u64]) -> Result<FieldElem> {
        if digits.len() > self.k {
            return Err(Error::Structure(format!(
                "element has {} digits but the field has degree {}",
                digits.len(),
                self.k
            )));
        }
        let mut d: Vec<u64> = digits.iter().map(|&v| v % self.p).collect();
        d.resize(self.k, 0);
        Ok(FieldElem { field: Arc::clone(self), digits: d })
    }

    /// Embedding of an integer through `Z -> F_p <= F_{p^k}`.
    pub fn from_bigint(self: &Arc<Self>, v: &BigInt) -> FieldElem {
        let r = v.mod_floor(&BigInt::from(self.p));
        debug_assert!(!r.is_negative());
        let mut digits = vec![0; self.k];
        digits[0] = r.to_u64().expect("residue fits u64");
        FieldElem { field: Arc::clone(self), digits }
    }

    pub fn from_u64(self: &Arc<Self>, v: u64) -> FieldElem {
        let mut digits = vec![0; self.k];
        digits[0] = v % self.p;
        FieldElem { field: Arc::clone(self), digits }
    }

    /// All field elements in packed-code order. Only for small fields.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElem> + '_ {
        let order = self
            .order_u64
            .expect("element enumeration requires the order to fit u64");
        let field = Arc::clone(self);
        (0..order).map(move |code| field.decode(code))
    }

    // -- packed codes ---------------------------------------------------------

    /// Digits -> packed code. Requires `supports_packed()`.
    pub fn encode(&self, digits: &[u64]) -> u64 {
        debug_assert!(self.supports_packed());
        let mut code = 0u64;
        for (i, &d) in digits.iter().enumerate() {
            code += (d % self.p) * self.p_pows[i];
        }
        code
    }

    pub fn decode(self: &Arc<Self>, code: u64) -> FieldElem {
        let mut digits = vec![0; self.k];
        let mut v = code;
        for slot in digits.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        FieldElem { field: Arc::clone(self), digits }
    }

    #[inline]
    pub fn add_code(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = &self.tables {
            return t.add[a as usize * t.q + b as usize];
        }
        self.add_code_raw(a, b)
    }

    fn add_code_raw(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let mut out = 0u64;
        let mut av = a;
        let mut bv = b;
        for &pw in &self.p_pows[..self.k] {
            let s = (av % p + bv % p) % p;
            out += s * pw;
            av /= p;
            bv /= p;
        }
        out
    }

    #[inline]
    pub fn neg_code(&self, a: u64) -> u64 {
        if let Some(t) = &self.tables {
            return t.neg[a as usize];
        }
        self.neg_code_raw(a)
    }

    fn neg_code_raw(&self, a: u64) -> u64 {
        let p = self.p;
        let mut out = 0u64;
        let mut av = a;
        for &pw in &self.p_pows[..self.k] {
            let d = av % p;
            if d != 0 {
                out += (p - d) * pw;
            }
            av /= p;
        }
        out
    }

    #[inline]
    pub fn sub_code(&self, a: u64, b: u64) -> u64 {
        self.add_code(a, self.neg_code(b))
    }

    /// Packed multiplication. Safe because `supports_packed()` bounds
    /// `p < 2^30` and `k <= 12`, so digit convolutions fit in `u64`.
    #[inline]
    pub fn mul_code(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = &self.tables {
            return t.mul[a as usize * t.q + b as usize];
        }
        self.mul_code_raw(a, b)
    }

    fn mul_code_raw(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let k = self.k;
        if k == 1 {
            return mul_mod(a, b, p);
        }
        let mut ad = [0u64; MAX_K];
        let mut bd = [0u64; MAX_K];
        let mut av = a;
        let mut bv = b;
        for i in 0..k {
            ad[i] = av % p;
            bd[i] = bv % p;
            av /= p;
            bv /= p;
        }
        let mut buf = [0u64; 2 * MAX_K - 1];
        for i in 0..k {
            if ad[i] == 0 {
                continue;
            }
            for j in 0..k {
                buf[i + j] += ad[i] * bd[j];
            }
        }
        for v in buf.iter_mut().take(2 * k - 1) {
            *v %= p;
        }
        // fold x^i for i >= k using x^k = -(m_0 + ... + m_{k-1} x^{k-1})
        for i in (k..2 * k - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..k {
                let m = self.modulus[j];
                if m != 0 {
                    buf[i - k + j] = (buf[i - k + j] + c * (p - m)) % p;
                }
            }
        }
        let mut out = 0u64;
        for (digit, pw) in buf[..k].iter().zip(&self.p_pows) {
            out += digit * pw;
        }
        out
    }

    pub fn inv_code(self: &Arc<Self>, a: u64) -> u64 {
        let elem = self.decode(a);
        let inv = elem.inv().expect("inverse of nonzero element");
        self.encode(&inv.digits)
    }

    pub fn pow_code(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.encode(&{
            let mut one = vec![0; self.k];
            one[0] = 1 % self.p;
            one
        });
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_code(acc, base);
            }
            base = self.mul_code(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// An element of a [`FiniteField`]; the field travels with the element.
#[derive(Debug, Clone)]
pub struct FieldElem {
    field: Arc<FiniteField>,
    /// Residue polynomial digits, low degree first, length `k`.
    digits: Vec<u64>,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.digits == other.digits
    }
}

impl Eq for FieldElem {}

impl FieldElem {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn same_field(&self, other: &FieldElem) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn add(&self, rhs: &FieldElem) -> FieldElem {
        assert!(self.same_field(rhs), "elements of different fields");
        let p = self.field.p;
        let digits = self
            .digits
            .iter()
            .zip(&rhs.digits)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElem { field: Arc::clone(&self.field), digits }
    }

    pub fn neg(&self) -> FieldElem {
        let p = self.field.p;
        let digits = self
            .digits
            .iter()
            .map(|&a| if a == 0 { 0 } else { p - a })
            .collect();
        FieldElem { field: Arc::clone(&self.field), digits }
    }

    pub fn sub(&self, rhs: &FieldElem) -> FieldElem {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldElem) -> FieldElem {
        assert!(self.same_field(rhs), "elements of different fields");
        let p = self.field.p;
        let k = self.field.k;
        let mut buf = vec![0u64; 2 * k - 1];
        for (i, &a) in self.digits.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.digits.iter().enumerate() {
                buf[i + j] = (buf[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..k {
                let m = self.field.modulus[j];
                if m != 0 {
                    buf[i - k + j] = (buf[i - k + j] + mul_mod(c, p - m, p)) % p;
                }
            }
        }
        buf.truncate(k);
        FieldElem { field: Arc::clone(&self.field), digits: buf }
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        let p = self.field.p;
        // extended Euclid in F_p[x] against the modulus
        let mut r0 = FpPoly::from_raw(p, self.field.modulus.clone());
        let mut r1 = FpPoly::from_raw(p, self.digits.clone());
        let mut t0 = FpPoly::zero(p);
        let mut t1 = FpPoly::one(p);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        debug_assert_eq!(r0.degree(), Some(0));
        let scale = inv_mod(r0.leading(), p);
        let inv_poly = t0.mul_scalar(scale);
        let mut digits = inv_poly.coeffs().to_vec();
        digits.resize(self.field.k, 0);
        Some(FieldElem { field: Arc::clone(&self.field), digits })
    }

    pub fn pow(&self, mut exp: u64) -> FieldElem {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// The Frobenius `a -> a^p`.
    pub fn frobenius(&self) -> FieldElem {
        self.pow(self.field.p)
    }

    /// `a^(p^k) = a` via `k` Frobenius steps; exposed for tests of the
    /// field axioms without big-integer exponents.
    pub fn frobenius_iterated(&self, times: usize) -> FieldElem {
        let mut acc = self.clone();
        for _ in 0..times {
            acc = acc.frobenius();
        }
        acc
    }
}

impl core::fmt::Display for FieldElem {
    /// Renders as a polynomial in the generator `g`, e.g. `2g+1`.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &d) in self.digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{d}")?,
                1 if d == 1 => write!(f, "g")?,
                1 => write!(f, "{d}g")?,
                _ if d == 1 => write!(f, "g^{i}")?,
                _ => write!(f, "{d}g^{i}")?,
            }
        }
        Ok(())
    }
}

/// Construct `F_{p^k}`; alias for [`FiniteField::construct`].
pub fn ff_construct(p: u64, k: usize) -> Result<Arc<FiniteField>> {
    FiniteField::construct(p, k)
}
