//! Hypothesis certification and the parallel prime scan.

use crate::instance::Instance;
use crate::{HarnessError, HResult};
use chowbez_core::chowforms::{chow_plane_curve, ChowPoint};
use chowbez_core::combinat::{bezout_bound, BoundParams, BoundReport, HeightInput};
use chowbez_core::exactnum::{primes_up_to, rat, BigInt, FiniteField, Real};
use chowbez_core::heights::{point_height_hb, point_height_hk};
use chowbez_core::modfactor::{
    abs_irred_mod_p, find_decomposition, DecompOutcome, DecompositionWitness, IrredOutcome,
};
use num_rational::BigRational;
use rayon::prelude::*;

/// Outcome of searching for a certifying prime: one good-reduction prime
/// with an absolutely irreducible fiber certifies that the curve itself
/// is not decomposable over the algebraic closure of Q.
#[derive(Debug, Clone)]
pub struct HypothesisReport {
    /// The certifying prime, if one was found.
    pub certified: Option<u64>,
    pub searched_limit: u64,
    /// Primes `p <= d` skipped: in tiny characteristic the fiber can be
    /// inseparable (a p-th power), so those primes never certify.
    pub skipped_small: Vec<u64>,
    /// Primes where the irreducibility search hit the cost cap.
    pub undetermined: Vec<u64>,
}

/// Search primes up to `limit` for one whose fiber is absolutely
/// irreducible. Failure is inconclusive, not an error.
pub fn check_hypothesis(
    form: &chowbez_core::multipoly::MHPoly<BigInt>,
    limit: u64,
    cost_cap: u64,
) -> HResult<HypothesisReport> {
    let d = form
        .multidegree()
        .ok_or_else(|| HarnessError::Input(String::from("form must be homogeneous")))?[0]
        as u64;
    let mut report = HypothesisReport {
        certified: None,
        searched_limit: limit,
        skipped_small: Vec::new(),
        undetermined: Vec::new(),
    };
    for p in primes_up_to(limit) {
        if p <= d {
            report.skipped_small.push(p);
            continue;
        }
        let field = FiniteField::construct(p, 1)?;
        let fiber = form.reduce_mod(&field);
        if fiber.is_zero() || fiber.multidegree().map(|m| m[0] as u64) != Some(d) {
            continue; // bad reduction for the parametrization
        }
        match abs_irred_mod_p(&fiber, cost_cap)? {
            IrredOutcome::Irreducible => {
                report.certified = Some(p);
                return Ok(report);
            }
            IrredOutcome::Reducible(_) => {}
            IrredOutcome::Undetermined(_) => report.undetermined.push(p),
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decomposes {
    Yes,
    No,
    Undetermined,
}

/// One scanned prime.
#[derive(Debug, Clone)]
pub struct PrimeRow {
    pub p: u64,
    pub status: Decomposes,
    pub extension_degree: Option<usize>,
    pub witness: Option<DecompositionWitness>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Incomplete,
}

/// Full scan result: per-prime rows, the reducible set against the
/// assembled bound, and the verdict.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub label: String,
    pub n: u32,
    pub degree: u32,
    pub p_max: u64,
    pub cost_cap: u64,
    pub seed: u64,
    pub hypothesis: HypothesisReport,
    pub forced: bool,
    pub rows: Vec<PrimeRow>,
    pub bad_reduction: Vec<u64>,
    pub reducible: Vec<u64>,
    pub undetermined: Vec<u64>,
    /// `log prod q_j` over the reducible primes.
    pub log_prod: Real,
    pub h_k: Real,
    pub h_b: Real,
    pub chow: ChowPoint,
    pub bound: BoundReport,
    pub margin: Real,
    pub verdict: Verdict,
}

/// Scan every prime `p <= p_max`, decide decomposability of each fiber,
/// and compare `log prod q_j` with the bound evaluated at the computed
/// point height of the Chow form.
///
/// Per-prime searches run on a dedicated pool of `jobs` threads; rows are
/// assembled in prime order, so the output is independent of scheduling.
pub fn scan_primes(instance: &Instance, jobs: usize, force: bool) -> HResult<ScanReport> {
    let hypothesis = check_hypothesis(&instance.form, instance.p_max, instance.cost_cap)?;
    if hypothesis.certified.is_none() && !force {
        return Err(HarnessError::Hypothesis(hypothesis));
    }
    let d = instance.degree();

    let primes = primes_up_to(instance.p_max);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Input(format!("thread pool: {e}")))?;
    let scanned: Vec<(u64, Option<PrimeRow>)> = pool.install(|| {
        primes
            .par_iter()
            .map(|&p| scan_one_prime(instance, p).map(|row| (p, row)))
            .collect::<HResult<Vec<_>>>()
    })?;

    let mut rows = Vec::new();
    let mut bad_reduction = Vec::new();
    for (p, row) in scanned {
        match row {
            Some(row) => rows.push(row),
            None => bad_reduction.push(p),
        }
    }
    rows.sort_by_key(|r| r.p);

    let reducible: Vec<u64> = rows
        .iter()
        .filter(|r| r.status == Decomposes::Yes)
        .map(|r| r.p)
        .collect();
    let undetermined: Vec<u64> = rows
        .iter()
        .filter(|r| r.status == Decomposes::Undetermined)
        .map(|r| r.p)
        .collect();

    let product: BigInt = reducible.iter().map(|&p| BigInt::from(p)).product();
    let log_prod = Real::ln_rat(&BigRational::from(product));

    let chow = chow_plane_curve(&instance.form)?;
    let h_k = point_height_hk(chow.vector().entries())?;
    let h_b = point_height_hb(chow.vector().entries())?;
    let params = BoundParams::new(2, d, 1, instance.n)?;
    let bound = bezout_bound(&h_k, &params, HeightInput::ChowPoint)?;
    let margin = bound.total.sub(&log_prod);

    let verdict = if !undetermined.is_empty() {
        Verdict::Incomplete
    } else if log_prod.le_within(&bound.total, &rat(1, 1_000_000)) {
        Verdict::Holds
    } else {
        Verdict::Violated
    };

    Ok(ScanReport {
        label: instance.label.clone(),
        n: instance.n,
        degree: d,
        p_max: instance.p_max,
        cost_cap: instance.cost_cap,
        seed: instance.seed,
        hypothesis,
        forced: force,
        rows,
        bad_reduction,
        reducible,
        undetermined,
        log_prod,
        h_k,
        h_b,
        chow,
        bound,
        margin,
        verdict,
    })
}

/// Scan a single prime; `None` marks bad reduction (fiber vanished or
/// dropped degree), which cannot happen for primitive homogeneous input
/// but is kept explicit.
fn scan_one_prime(instance: &Instance, p: u64) -> HResult<Option<PrimeRow>> {
    let field = FiniteField::construct(p, 1)?;
    let fiber = instance.form.reduce_mod(&field);
    if fiber.is_zero()
        || fiber.multidegree().map(|m| m[0]) != Some(instance.degree())
    {
        return Ok(None);
    }
    let row = match find_decomposition(&fiber, instance.n, instance.cost_cap)? {
        DecompOutcome::Found(w) => PrimeRow {
            p,
            status: Decomposes::Yes,
            extension_degree: Some(w.extension_degree),
            witness: Some(w),
            note: None,
        },
        DecompOutcome::NoneFound => PrimeRow {
            p,
            status: Decomposes::No,
            extension_degree: None,
            witness: None,
            note: None,
        },
        DecompOutcome::Undetermined(msg) => PrimeRow {
            p,
            status: Decomposes::Undetermined,
            extension_degree: None,
            witness: None,
            note: Some(msg),
        },
    };
    Ok(Some(row))
}
