//! Scan instances and the fixture generators.

use crate::{HarnessError, HResult};
use chowbez_core::exactnum::{is_prime, BigInt};
use chowbez_core::multipoly::{MHPoly, Shape};
use num_traits::One;
use std::collections::BTreeSet;

/// A plane curve to scan: primitive homogeneous trivariate form plus the
/// scan parameters.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub form: MHPoly<BigInt>,
    pub n: u32,
    pub p_max: u64,
    pub cost_cap: u64,
    pub seed: u64,
    /// Exact reducible set when the fixture pins it (regression suites).
    pub expected_exact: Option<BTreeSet<u64>>,
    /// Primes that must appear in the reducible set (planted fixtures).
    pub expected_contains: BTreeSet<u64>,
}

impl Instance {
    pub fn new(
        label: impl Into<String>,
        form: MHPoly<BigInt>,
        n: u32,
        p_max: u64,
        cost_cap: u64,
        seed: u64,
    ) -> HResult<Instance> {
        let d = validate_form(&form)?;
        if n < 1 || n >= d {
            return Err(HarnessError::Input(format!(
                "component degree n = {n} outside 1..={}",
                d - 1
            )));
        }
        if p_max < 2 {
            return Err(HarnessError::Input(String::from("p_max must be at least 2")));
        }
        Ok(Instance {
            label: label.into(),
            form,
            n,
            p_max,
            cost_cap,
            seed,
            expected_exact: None,
            expected_contains: BTreeSet::new(),
        })
    }

    pub fn degree(&self) -> u32 {
        self.form.multidegree().expect("validated homogeneous form")[0]
    }
}

fn validate_form(form: &MHPoly<BigInt>) -> HResult<u32> {
    if form.shape() != Shape::new(0, 2) {
        return Err(HarnessError::Input(String::from(
            "scan instances are plane curves: one block of three variables \
             (zero-cycles always decompose geometrically and are refused)",
        )));
    }
    let d = match form.multidegree() {
        Some(md) => md[0],
        None => {
            return Err(HarnessError::Input(String::from(
                "instance form must be nonzero and homogeneous",
            )))
        }
    };
    if d < 2 {
        return Err(HarnessError::Input(String::from(
            "instance form must have degree >= 2",
        )));
    }
    if !form.content().is_one() {
        return Err(HarnessError::Input(String::from(
            "instance form must be primitive",
        )));
    }
    Ok(d)
}

/// Build `F = G*H + P*E`, an instance whose fiber at `P` decomposes into
/// `(deg G, deg H)` by construction.
pub fn plant_instance(
    g: &MHPoly<BigInt>,
    h: &MHPoly<BigInt>,
    p: u64,
    e: &MHPoly<BigInt>,
    p_max: u64,
    cost_cap: u64,
    seed: u64,
) -> HResult<Instance> {
    if !is_prime(p) {
        return Err(HarnessError::Input(format!("{p} is not prime")));
    }
    let shape = Shape::new(0, 2);
    for (part, name) in [(g, "G"), (h, "H"), (e, "E")] {
        if part.shape() != shape || part.multidegree().is_none() {
            return Err(HarnessError::Input(format!(
                "{name} must be a nonzero homogeneous trivariate form"
            )));
        }
    }
    let dg = g.multidegree().unwrap()[0];
    let dh = h.multidegree().unwrap()[0];
    let de = e.multidegree().unwrap()[0];
    if dg + dh != de {
        return Err(HarnessError::Input(format!(
            "degree mismatch: deg G + deg H = {} but deg E = {de}",
            dg + dh
        )));
    }
    let f = g
        .mul(h)
        .map_err(HarnessError::Core)?
        .add(&e.mul_coeff(&BigInt::from(p)))
        .map_err(HarnessError::Core)?;
    if f.is_zero() || !f.content().is_one() {
        return Err(HarnessError::Input(String::from(
            "planted form is degenerate or not primitive",
        )));
    }
    let field = chowbez_core::exactnum::FiniteField::construct(p, 1).map_err(HarnessError::Core)?;
    if f.reduce_mod(&field).is_zero() {
        return Err(HarnessError::Input(format!(
            "planted form vanishes mod {p}"
        )));
    }
    let mut inst = Instance::new(
        format!("planted-p{p}"),
        f,
        dg,
        p_max,
        cost_cap,
        seed,
    )?;
    inst.expected_contains.insert(p);
    Ok(inst)
}

/// The diagonal conic family `F_N = X0^2 + X1^2 - N X2^2`, `N >= 2`
/// squarefree. The fiber degenerates exactly at 2 and the odd primes
/// dividing `N`, which is recorded as the expected reducible set.
pub fn conic_family(n_value: u64, p_max: u64, cost_cap: u64, seed: u64) -> HResult<Instance> {
    // the squarefree check is trial division, so keep the parameter small
    if n_value > 1_000_000_000_000 {
        return Err(HarnessError::Input(format!(
            "conic parameter {n_value} above the 10^12 fixture cap"
        )));
    }
    if n_value < 2 || !is_squarefree(n_value) {
        return Err(HarnessError::Input(format!(
            "conic parameter must be a squarefree integer >= 2, got {n_value}"
        )));
    }
    let form = MHPoly::plane_form(&[
        (1, [2, 0, 0]),
        (1, [0, 2, 0]),
        (-(n_value as i64), [0, 0, 2]),
    ]);
    let mut inst = Instance::new(format!("conic-N{n_value}"), form, 1, p_max, cost_cap, seed)?;
    let mut expected: BTreeSet<u64> = BTreeSet::new();
    expected.insert(2);
    let mut rest = n_value;
    while rest.is_multiple_of(2) {
        rest /= 2;
    }
    let mut q = 3;
    while q * q <= rest {
        if rest.is_multiple_of(q) {
            expected.insert(q);
            while rest.is_multiple_of(q) {
                rest /= q;
            }
        }
        q += 2;
    }
    if rest > 1 {
        expected.insert(rest);
    }
    expected.retain(|&p| p <= p_max);
    inst.expected_exact = Some(expected);
    Ok(inst)
}

fn is_squarefree(mut n: u64) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}
