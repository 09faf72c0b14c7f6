//! Search for decompositions of a plane-curve fiber `F mod p` into forms
//! of degrees `n` and `d - n` over extensions `F_{p^k}`, `k <= d`.
//!
//! The decision procedure is brute-force enumeration of normalized
//! candidate divisors of degree `min(n, d-n)` in a fixed order, with
//! divisibility decided by exact multivariate division. A cost cap turns
//! oversized enumerations into an explicit "undetermined" instead of a
//! silent wrong answer. Extensions stop at `k = d`: Frobenius permutes
//! the components, so a stable component is defined over a degree at most
//! the number of components.
//!
//! [`decomposition_oracle`] is an independent reference used by the test
//! suites: for linear factors it tests the vanishing of `F` restricted to
//! each candidate line (by direct expansion in a parametrization, no
//! division), and reconstructs the cofactor through a linear solve.

use crate::exactnum::{BigInt, FieldElem, FiniteField};
use crate::multipoly::{MHPoly, Mono, Shape};
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::One;

/// Default enumeration budget per extension level.
pub const DEFAULT_COST_CAP: u64 = 1 << 28;

/// A certified decomposition `scalar * g * h = F mod p` with
/// `deg g = n`, `deg h = d - n`, over `F_{p^k}`.
#[derive(Debug, Clone)]
pub struct DecompositionWitness {
    pub prime: u64,
    pub extension_degree: usize,
    pub field: Arc<FiniteField>,
    pub g: MHPoly<FieldElem>,
    pub h: MHPoly<FieldElem>,
    pub scalar: FieldElem,
}

/// Result of a decomposition search.
#[derive(Debug, Clone)]
pub enum DecompOutcome {
    Found(DecompositionWitness),
    NoneFound,
    /// The enumeration would exceed the cost cap.
    Undetermined(String),
}

impl DecompOutcome {
    pub fn found(&self) -> Option<&DecompositionWitness> {
        match self {
            DecompOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Result of an absolute-irreducibility check.
#[derive(Debug, Clone)]
pub enum IrredOutcome {
    Irreducible,
    Reducible(DecompositionWitness),
    Undetermined(String),
}

// ---------------------------------------------------------------------------
// dense trivariate forms over packed field codes
// ---------------------------------------------------------------------------

fn tri_len(d: u32) -> usize {
    ((d + 1) * (d + 2) / 2) as usize
}

/// Index of the monomial `X0^e0 X1^e1 X2^(d-e0-e1)` in the canonical
/// (descending lex) order of degree `d`.
fn tri_index(d: u32, e0: u32, e1: u32) -> usize {
    let t = d - e0;
    (t * (t + 1) / 2 + (t - e1)) as usize
}

/// Exponents in canonical order.
fn tri_table(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::with_capacity(tri_len(d));
    for e0 in (0..=d).rev() {
        for e1 in (0..=d - e0).rev() {
            out.push((e0, e1, d - e0 - e1));
        }
    }
    out
}

/// Exact division of dense degree-`df` form by a degree-`dg` candidate
/// whose first nonzero coefficient is 1. Returns the quotient
/// coefficients in `quot`, or `false` if the candidate does not divide.
#[allow(clippy::too_many_arguments)]
fn div_exact(
    field: &FiniteField,
    df: u32,
    dg: u32,
    f: &[u64],
    g: &[u64],
    gt: &[(u32, u32, u32)],
    rem: &mut Vec<u64>,
    quot: &mut Vec<u64>,
) -> bool {
    let dq = df - dg;
    rem.clear();
    rem.extend_from_slice(f);
    quot.clear();
    quot.resize(tri_len(dq), 0);
    let glead = g.iter().position(|&c| c != 0).expect("nonzero divisor");
    let (g0, g1, _) = gt[glead];
    debug_assert_eq!(g[glead], 1, "candidate divisors are normalized");
    let ft = TriExps::new(df);
    let mut cursor = 0usize;
    loop {
        while cursor < rem.len() && rem[cursor] == 0 {
            cursor += 1;
        }
        if cursor == rem.len() {
            return true;
        }
        let (f0, f1, _) = ft.get(cursor);
        if f0 < g0 || f1 < g1 || (df - f0 - f1) < (dg - g0 - g1) {
            return false;
        }
        let q0 = f0 - g0;
        let q1 = f1 - g1;
        let c = rem[cursor];
        quot[tri_index(dq, q0, q1)] = c;
        for (i, &gc) in g.iter().enumerate() {
            if gc == 0 {
                continue;
            }
            let (a0, a1, _) = gt[i];
            let idx = tri_index(df, a0 + q0, a1 + q1);
            let sub = field.mul_code(c, gc);
            rem[idx] = field.sub_code(rem[idx], sub);
        }
        debug_assert_eq!(rem[cursor], 0);
    }
}

/// Cheap exponent lookup without building a table per call.
struct TriExps {
    d: u32,
}

impl TriExps {
    fn new(d: u32) -> TriExps {
        TriExps { d }
    }

    fn get(&self, idx: usize) -> (u32, u32, u32) {
        // invert the block formula t(t+1)/2 + (t - e1)
        let idx = idx as u32;
        let mut t = 0u32;
        while (t + 1) * (t + 2) / 2 <= idx {
            t += 1;
        }
        let offset = idx - t * (t + 1) / 2;
        let e0 = self.d - t;
        let e1 = t - offset;
        (e0, e1, self.d - e0 - e1)
    }
}

fn mul_dense(field: &FiniteField, da: u32, db: u32, a: &[u64], b: &[u64]) -> Vec<u64> {
    let at = tri_table(da);
    let bt = tri_table(db);
    let d = da + db;
    let mut out = vec![0u64; tri_len(d)];
    for (i, &ac) in a.iter().enumerate() {
        if ac == 0 {
            continue;
        }
        let (a0, a1, _) = at[i];
        for (j, &bc) in b.iter().enumerate() {
            if bc == 0 {
                continue;
            }
            let (b0, b1, _) = bt[j];
            let idx = tri_index(d, a0 + b0, a1 + b1);
            out[idx] = field.add_code(out[idx], field.mul_code(ac, bc));
        }
    }
    out
}

fn dense_to_poly(field: &Arc<FiniteField>, d: u32, coeffs: &[u64]) -> MHPoly<FieldElem> {
    let table = tri_table(d);
    let mut out = MHPoly::zero(Shape::new(0, 2));
    for (idx, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (e0, e1, e2) = table[idx];
        out.add_term(Mono::from_flat(vec![e0, e1, e2]), field.decode(c));
    }
    out
}

/// Validates a prime-field plane-curve form and returns `(p, d)`.
fn validate_fiber(f: &MHPoly<FieldElem>) -> Result<(u64, u32)> {
    if f.shape() != Shape::new(0, 2) {
        return Err(Error::Structure(String::from(
            "fiber form must live in one block of three variables",
        )));
    }
    let (_, sample) = f.leading().ok_or(Error::VanishingReduction)?;
    let field = sample.field();
    if field.extension_degree() != 1 {
        return Err(Error::Structure(String::from(
            "fiber form must be given over the prime field",
        )));
    }
    let d = f
        .multidegree()
        .ok_or_else(|| Error::Structure(String::from("fiber form must be homogeneous")))?[0];
    if d == 0 {
        return Err(Error::Domain(String::from("fiber form must have degree >= 1")));
    }
    Ok((field.characteristic(), d))
}

/// Dense packed coefficients of a prime-field form, valid in any
/// extension of the same characteristic (constants embed digit-wise).
fn dense_from_prime(f: &MHPoly<FieldElem>, d: u32) -> Vec<u64> {
    let mut out = vec![0u64; tri_len(d)];
    for (m, c) in f.terms() {
        let flat = m.flat();
        out[tri_index(d, flat[0], flat[1])] = c.digits()[0];
    }
    out
}

/// Lift a prime-field form into an extension of the same characteristic.
pub fn lift_to_extension(f: &MHPoly<FieldElem>, field: &Arc<FiniteField>) -> MHPoly<FieldElem> {
    let mut out = MHPoly::zero(f.shape());
    for (m, c) in f.terms() {
        debug_assert_eq!(c.field().characteristic(), field.characteristic());
        out.add_term(m.clone(), field.from_u64(c.digits()[0]));
    }
    out
}

fn candidate_count(q: &BigInt, len: usize) -> BigInt {
    // (q^len - 1) / (q - 1)
    let num = q.pow(len as u32) - BigInt::one();
    num / (q - BigInt::one())
}

/// Odometer over normalized candidate vectors: the first nonzero entry is
/// 1 and the vector, read as a base-q numeral with position 0 most
/// significant, increases strictly. Returns `false` when exhausted.
struct NormalizedEnum {
    q: u64,
    len: usize,
    lead: usize,
    digits: Vec<u64>,
    started: bool,
}

impl NormalizedEnum {
    fn new(q: u64, len: usize) -> NormalizedEnum {
        NormalizedEnum {
            q,
            len,
            lead: len - 1,
            digits: vec![0; len],
            started: false,
        }
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            self.digits[self.lead] = 1;
            return true;
        }
        // increment the tail after the leading 1
        let mut pos = self.len;
        loop {
            if pos == self.lead + 1 {
                // tail exhausted: move the leading 1 left
                if self.lead == 0 {
                    return false;
                }
                for d in self.digits.iter_mut() {
                    *d = 0;
                }
                self.lead -= 1;
                self.digits[self.lead] = 1;
                return true;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < self.q {
                return true;
            }
            self.digits[pos] = 0;
        }
    }
}

struct LevelSearch {
    field: Arc<FiniteField>,
    d: u32,
    dense_f: Vec<u64>,
}

impl LevelSearch {
    fn new(p: u64, k: usize, f: &MHPoly<FieldElem>, d: u32) -> Result<LevelSearch> {
        let field = FiniteField::construct(p, k)?;
        let dense_f = dense_from_prime(f, d);
        Ok(LevelSearch { field, d, dense_f })
    }

    /// Budget check for enumerating degree-`m` candidates at this level.
    fn affordable(&self, m: u32, cost_cap: u64) -> bool {
        if !self.field.supports_packed() {
            return false;
        }
        candidate_count(&self.field.order(), tri_len(m)) <= BigInt::from(cost_cap)
    }
}

/// Package a found factorization `f = cand * quot` (with `deg cand = m`)
/// into a witness with `deg g = n`, verifying the product identity.
fn build_witness(
    level: &LevelSearch,
    f: &MHPoly<FieldElem>,
    n: u32,
    m: u32,
    cand: &[u64],
    quot: &[u64],
) -> Result<DecompositionWitness> {
    let field = &level.field;
    let d = level.d;
    let c_code = *quot.iter().find(|&&c| c != 0).expect("nonzero cofactor");
    let c_inv = field.inv_code(c_code);
    // normalize the cofactor to leading coefficient 1
    let quot_norm: Vec<u64> = quot.iter().map(|&v| field.mul_code(v, c_inv)).collect();
    let cand_poly = dense_to_poly(field, m, cand);
    let quot_poly = dense_to_poly(field, d - m, &quot_norm);
    let scalar = field.decode(c_code);
    let (g, h) = if n == m {
        (cand_poly, quot_poly)
    } else {
        (quot_poly, cand_poly)
    };
    let witness = DecompositionWitness {
        prime: field.characteristic(),
        extension_degree: field.extension_degree(),
        field: Arc::clone(field),
        g,
        h,
        scalar,
    };
    verify_witness(&witness, f)?;
    Ok(witness)
}

/// The product identity is re-checked on every return, not only in tests.
fn verify_witness(w: &DecompositionWitness, f: &MHPoly<FieldElem>) -> Result<()> {
    let lifted = lift_to_extension(f, &w.field);
    let product = w.g.mul(&w.h)?.mul_coeff(&w.scalar);
    if product != lifted {
        return Err(Error::Invariant(String::from(
            "decomposition witness failed to re-multiply to the fiber form",
        )));
    }
    Ok(())
}

/// Search for a decomposition of the fiber `f` (over `F_p`) into forms of
/// degrees `n` and `d - n`, over `F_{p^k}` for `k = 1, ..., d` in order.
/// Within each level, normalized degree-`min(n, d-n)` candidates are
/// tried in the fixed enumeration order and divisibility is decided by
/// exact division, so the first witness is deterministic.
pub fn find_decomposition(
    f: &MHPoly<FieldElem>,
    n: u32,
    cost_cap: u64,
) -> Result<DecompOutcome> {
    let (p, d) = validate_fiber(f)?;
    if n == 0 || n >= d {
        return Err(Error::Domain(format!(
            "component degree n = {n} outside 1..={}",
            d - 1
        )));
    }
    let m = n.min(d - n);
    let m_len = tri_len(m);
    let gt = tri_table(m);
    let mut rem: Vec<u64> = Vec::new();
    let mut quot: Vec<u64> = Vec::new();
    for k in 1..=d as usize {
        let level = LevelSearch::new(p, k, f, d)?;
        if !level.affordable(m, cost_cap) {
            return Ok(DecompOutcome::Undetermined(format!(
                "enumeration of degree-{m} forms over F_{{{p}^{k}}} exceeds the cost cap {cost_cap}"
            )));
        }
        if m == 1 {
            if let Some(w) = level_search_linear(&level, f, n, &gt, &mut rem, &mut quot)? {
                return Ok(DecompOutcome::Found(w));
            }
            continue;
        }
        let q = level.field.order_u64().expect("packed field");
        let mut cands = NormalizedEnum::new(q, m_len);
        while cands.advance() {
            if div_exact(
                &level.field,
                d,
                m,
                &level.dense_f,
                &cands.digits,
                &gt,
                &mut rem,
                &mut quot,
            ) {
                let w = build_witness(&level, f, n, m, &cands.digits, &quot)?;
                return Ok(DecompOutcome::Found(w));
            }
        }
    }
    Ok(DecompOutcome::NoneFound)
}

/// The line search at one extension level, in the canonical candidate
/// order `(0,0,1)`, then `(0,1,c)` by ascending `c`, then `(1,b,c)` by
/// ascending `(b, c)`.
///
/// A line divides only if the restriction of `F` to it vanishes; the
/// restriction's pure-`X1^d` coefficient depends only on `b` and its
/// pure-`X2^d` coefficient only on `c`. Candidates failing those
/// single-variable conditions are skipped in blocks, which prunes the
/// `q^2` inner rectangle to at most `d^2` division attempts without
/// changing which candidate is found first.
fn level_search_linear(
    level: &LevelSearch,
    f: &MHPoly<FieldElem>,
    n: u32,
    gt: &[(u32, u32, u32)],
    rem: &mut Vec<u64>,
    quot: &mut Vec<u64>,
) -> Result<Option<DecompositionWitness>> {
    let field = &level.field;
    let d = level.d;
    let q = field.order_u64().expect("packed field");
    let dense_f = &level.dense_f;
    let try_candidate = |cand: &[u64; 3],
                             rem: &mut Vec<u64>,
                             quot: &mut Vec<u64>|
     -> Result<Option<DecompositionWitness>> {
        if div_exact(field, d, 1, dense_f, cand, gt, rem, quot) {
            Ok(Some(build_witness(level, f, n, 1, cand, quot)?))
        } else {
            Ok(None)
        }
    };

    // z = 2: the single candidate X2
    if let Some(w) = try_candidate(&[0, 0, 1], rem, quot)? {
        return Ok(Some(w));
    }

    // sign-folded restriction coefficients: entry j is f_(pattern) * (-1)^j
    let signed = |coeff: u64, j: u32| {
        if j.is_multiple_of(2) {
            coeff
        } else {
            field.neg_code(coeff)
        }
    };
    let horner = |poly: &[u64], x: u64| {
        let mut acc = 0u64;
        for &c in poly.iter().rev() {
            acc = field.add_code(field.mul_code(acc, x), c);
        }
        acc
    };

    // z = 1: lines X1 + c X2. They cannot divide when X0^d survives.
    if dense_f[tri_index(d, d, 0)] == 0 {
        // necessary: the X0-free part of F vanishes at X1 = -c X2
        let prune: Vec<u64> = (0..=d)
            .map(|e1| signed(dense_f[tri_index(d, 0, e1)], e1))
            .collect();
        let degenerate = prune.iter().all(|&c| c == 0);
        for c in 0..q {
            if degenerate || horner(&prune, c) == 0 {
                if let Some(w) = try_candidate(&[0, 1, c], rem, quot)? {
                    return Ok(Some(w));
                }
            }
        }
    }

    // z = 0: lines X0 + b X1 + c X2
    let a_poly: Vec<u64> = (0..=d)
        .map(|j| signed(dense_f[tri_index(d, j, d - j)], j))
        .collect(); // X1^d coefficient as a polynomial in b
    let b_poly: Vec<u64> = (0..=d)
        .map(|j| signed(dense_f[tri_index(d, j, 0)], j))
        .collect(); // X2^d coefficient as a polynomial in c
    let collect_roots = |poly: &[u64]| -> Vec<u64> {
        if poly.iter().all(|&c| c == 0) {
            (0..q).collect()
        } else {
            (0..q).filter(|&x| horner(poly, x) == 0).collect()
        }
    };
    let roots_b = collect_roots(&a_poly);
    let roots_c = collect_roots(&b_poly);
    for &b in &roots_b {
        for &c in &roots_c {
            if let Some(w) = try_candidate(&[1, b, c], rem, quot)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Whether the fiber is absolutely irreducible: no decomposition into two
/// positive-degree forms over any `F_{p^k}`, `k <= d`, checking every
/// `n <= d/2`. Degree-1 fibers are irreducible outright.
pub fn abs_irred_mod_p(f: &MHPoly<FieldElem>, cost_cap: u64) -> Result<IrredOutcome> {
    let (_, d) = validate_fiber(f)?;
    let mut undetermined: Option<String> = None;
    for n in 1..=d / 2 {
        match find_decomposition(f, n, cost_cap)? {
            DecompOutcome::Found(w) => return Ok(IrredOutcome::Reducible(w)),
            DecompOutcome::Undetermined(msg) => undetermined = Some(msg),
            DecompOutcome::NoneFound => {}
        }
    }
    Ok(match undetermined {
        Some(msg) => IrredOutcome::Undetermined(msg),
        None => IrredOutcome::Irreducible,
    })
}

// ---------------------------------------------------------------------------
// the independent oracle
// ---------------------------------------------------------------------------

/// Independent brute-force reference for [`find_decomposition`].
///
/// Linear candidates are tested by restricting `F` to the line through a
/// two-point parametrization and expanding — no division; the cofactor is
/// then reconstructed by solving a linear system. Candidates of degree
/// `>= 2` fall back to literal pair enumeration, which is only affordable
/// for tiny fields and otherwise reports undetermined.
pub fn decomposition_oracle(
    f: &MHPoly<FieldElem>,
    n: u32,
    cost_cap: u64,
) -> Result<DecompOutcome> {
    let (p, d) = validate_fiber(f)?;
    if n == 0 || n >= d {
        return Err(Error::Domain(format!(
            "component degree n = {n} outside 1..={}",
            d - 1
        )));
    }
    let m = n.min(d - n);
    for k in 1..=d as usize {
        let level = LevelSearch::new(p, k, f, d)?;
        let outcome = if m == 1 {
            oracle_linear_level(&level, f, n, cost_cap)?
        } else {
            oracle_pair_level(&level, f, n, m, cost_cap)?
        };
        match outcome {
            None => {}
            Some(out) => return Ok(out),
        }
    }
    Ok(DecompOutcome::NoneFound)
}

/// One extension level of the linear-factor oracle. `Ok(None)` means "no
/// factor at this level, keep going".
fn oracle_linear_level(
    level: &LevelSearch,
    f: &MHPoly<FieldElem>,
    n: u32,
    cost_cap: u64,
) -> Result<Option<DecompOutcome>> {
    if !level.affordable(1, cost_cap) {
        return Ok(Some(DecompOutcome::Undetermined(format!(
            "line enumeration over F_{{{}^{}}} exceeds the cost cap {cost_cap}",
            level.field.characteristic(),
            level.field.extension_degree()
        ))));
    }
    let field = &level.field;
    let q = field.order_u64().expect("packed field");
    let d = level.d;
    let ft = tri_table(d);
    let mut cands = NormalizedEnum::new(q, 3);
    while cands.advance() {
        let line = &cands.digits;
        let (pt1, pt2) = line_basis(field, line);
        if restriction_vanishes(field, d, &ft, &level.dense_f, &pt1, &pt2) {
            let quot = cofactor_by_linear_solve(field, d, &level.dense_f, line)?;
            let w = build_witness(level, f, n, 1, line, &quot)?;
            return Ok(Some(DecompOutcome::Found(w)));
        }
    }
    Ok(None)
}

/// Two projective points spanning the line `a X0 + b X1 + c X2 = 0`.
fn line_basis(field: &FiniteField, line: &[u64]) -> ([u64; 3], [u64; 3]) {
    let (a, b, c) = (line[0], line[1], line[2]);
    if a != 0 {
        debug_assert_eq!(a, 1);
        ([field.neg_code(b), 1, 0], [field.neg_code(c), 0, 1])
    } else if b != 0 {
        debug_assert_eq!(b, 1);
        ([1, 0, 0], [0, field.neg_code(c), 1])
    } else {
        ([1, 0, 0], [0, 1, 0])
    }
}

/// Whether `F(s P1 + t P2)` is the zero binary form, by direct expansion.
/// Degrees are capped well below this buffer size by the extension cap.
const MAX_RESTRICT_DEG: usize = 40;

fn restriction_vanishes(
    field: &FiniteField,
    d: u32,
    ft: &[(u32, u32, u32)],
    dense_f: &[u64],
    p1: &[u64; 3],
    p2: &[u64; 3],
) -> bool {
    let len = d as usize + 1;
    assert!(len <= MAX_RESTRICT_DEG);
    let mut total = [0u64; MAX_RESTRICT_DEG];
    let mut factor_acc = [0u64; MAX_RESTRICT_DEG];
    let mut next = [0u64; MAX_RESTRICT_DEG];
    for (idx, &fc) in dense_f.iter().enumerate() {
        if fc == 0 {
            continue;
        }
        let (e0, e1, e2) = ft[idx];
        // expand prod_i (s p1_i + t p2_i)^{e_i} as a binary form in (s, t)
        factor_acc[..len].fill(0);
        factor_acc[0] = fc;
        let mut acc_len = 1usize;
        for (var, &e) in [e0, e1, e2].iter().enumerate() {
            for _ in 0..e {
                next[..acc_len + 1].fill(0);
                for (j, &coef) in factor_acc[..acc_len].iter().enumerate() {
                    if coef == 0 {
                        continue;
                    }
                    // multiply by (s p1 + t p2)
                    next[j] = field.add_code(next[j], field.mul_code(coef, p1[var]));
                    next[j + 1] = field.add_code(next[j + 1], field.mul_code(coef, p2[var]));
                }
                acc_len += 1;
                core::mem::swap(&mut factor_acc, &mut next);
            }
        }
        debug_assert_eq!(acc_len, len);
        for (j, &coef) in factor_acc[..len].iter().enumerate() {
            total[j] = field.add_code(total[j], coef);
        }
    }
    total[..len].iter().all(|&c| c == 0)
}

/// Solve `line * H = F` for the dense cofactor `H` by Gaussian
/// elimination over the field.
fn cofactor_by_linear_solve(
    field: &Arc<FiniteField>,
    d: u32,
    dense_f: &[u64],
    line: &[u64],
) -> Result<Vec<u64>> {
    let rows = tri_len(d);
    let cols = tri_len(d - 1);
    let ht = tri_table(d - 1);
    // augmented matrix [A | F]
    let mut a = vec![vec![0u64; cols + 1]; rows];
    for (col, &(m0, m1, _)) in ht.iter().enumerate() {
        for (var, &lc) in line.iter().enumerate() {
            if lc == 0 {
                continue;
            }
            let (e0, e1) = match var {
                0 => (m0 + 1, m1),
                1 => (m0, m1 + 1),
                _ => (m0, m1),
            };
            let row = tri_index(d, e0, e1);
            a[row][col] = field.add_code(a[row][col], lc);
        }
    }
    for (row, &fc) in dense_f.iter().enumerate() {
        a[row][cols] = fc;
    }
    // Gauss-Jordan
    let mut pivot_row = 0usize;
    let mut pivots = vec![usize::MAX; cols];
    for col in 0..cols {
        let found = (pivot_row..rows).find(|&r| a[r][col] != 0);
        let r = match found {
            Some(r) => r,
            None => continue,
        };
        a.swap(pivot_row, r);
        let inv = field.inv_code(a[pivot_row][col]);
        for v in a[pivot_row].iter_mut() {
            *v = field.mul_code(*v, inv);
        }
        for rr in 0..rows {
            if rr != pivot_row && a[rr][col] != 0 {
                let factor = a[rr][col];
                let pivot = a[pivot_row].clone();
                for (slot, pv) in a[rr].iter_mut().zip(&pivot) {
                    let sub = field.mul_code(factor, *pv);
                    *slot = field.sub_code(*slot, sub);
                }
            }
        }
        pivots[col] = pivot_row;
        pivot_row += 1;
    }
    let mut h = vec![0u64; cols];
    for col in 0..cols {
        if pivots[col] != usize::MAX {
            h[col] = a[pivots[col]][cols];
        }
    }
    // the divisibility test already passed, so the residual must vanish
    let product = mul_dense(field, 1, d - 1, line, &h);
    if product != dense_f {
        return Err(Error::Invariant(String::from(
            "oracle cofactor reconstruction failed",
        )));
    }
    Ok(h)
}

/// One extension level of the literal pair-enumeration oracle for
/// `min(n, d-n) >= 2`.
fn oracle_pair_level(
    level: &LevelSearch,
    f: &MHPoly<FieldElem>,
    n: u32,
    m: u32,
    cost_cap: u64,
) -> Result<Option<DecompOutcome>> {
    let field = &level.field;
    let d = level.d;
    if !field.supports_packed() {
        return Ok(Some(DecompOutcome::Undetermined(String::from(
            "field too large for the oracle",
        ))));
    }
    let order = field.order();
    let pairs =
        candidate_count(&order, tri_len(m)) * candidate_count(&order, tri_len(d - m));
    if pairs > BigInt::from(cost_cap) {
        return Ok(Some(DecompOutcome::Undetermined(format!(
            "pair enumeration over F_{{{}^{}}} exceeds the cost cap {cost_cap}",
            field.characteristic(),
            field.extension_degree()
        ))));
    }
    let q = field.order_u64().expect("packed field");
    let gt = tri_table(m);
    let ht = tri_table(d - m);
    let mut g_iter = NormalizedEnum::new(q, tri_len(m));
    while g_iter.advance() {
        let g = g_iter.digits.clone();
        let g_lead = g.iter().position(|&c| c != 0).unwrap();
        let (g0, g1, _) = gt[g_lead];
        let mut h_iter = NormalizedEnum::new(q, tri_len(d - m));
        while h_iter.advance() {
            let h = &h_iter.digits;
            let h_lead = h.iter().position(|&c| c != 0).unwrap();
            let (h0, h1, _) = ht[h_lead];
            // the scalar is pinned by the leading coefficient of F
            let c = level.dense_f[tri_index(d, g0 + h0, g1 + h1)];
            if c == 0 {
                continue;
            }
            let mut prod = mul_dense(field, m, d - m, &g, h);
            for v in prod.iter_mut() {
                *v = field.mul_code(*v, c);
            }
            if prod == level.dense_f {
                // fold the scalar into the cofactor to reuse the packager
                let scaled: Vec<u64> = h.iter().map(|&v| field.mul_code(v, c)).collect();
                let w = build_witness(level, f, n, m, &g, &scaled)?;
                return Ok(Some(DecompOutcome::Found(w)));
            }
        }
    }
    Ok(None)
}
