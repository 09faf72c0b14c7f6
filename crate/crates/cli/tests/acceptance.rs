//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `--nocapture`). Run with
//! `cargo test -p chowbez-cli --test acceptance`.

use chowbez_cli::formats::PolyFile;
use chowbez_cli::harness::{check_hypothesis, scan_primes, Verdict};
use chowbez_cli::instance::Instance;
use chowbez_core::chowforms::{chow_plane_curve, chow_specialize_check, psi_product};
use chowbez_core::combinat::{deg_w, rank_n, sigma, BoundParams};
use chowbez_core::exactnum::rng::SplitMix64;
use chowbez_core::exactnum::{int, rat, BigInt, BigRat, FiniteField, FpPoly};
use chowbez_core::heights::{phi_ratio_exact, point_height_hb, point_height_hk};
use chowbez_core::modfactor::{
    decomposition_oracle, find_decomposition, lift_to_extension, univ_factor, DecompOutcome,
    DEFAULT_COST_CAP,
};
use chowbez_core::multipoly::{MHPoly, Mono, Shape};
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::Instant;

fn criterion<F: FnOnce() -> String>(number: u32, name: &str, run: F) {
    match catch_unwind(AssertUnwindSafe(run)) {
        Ok(detail) => println!("[PASS] criterion {number} ({name}): {detail}"),
        Err(cause) => {
            println!("[FAIL] criterion {number} ({name})");
            resume_unwind(cause);
        }
    }
}

fn f6() -> MHPoly<BigInt> {
    MHPoly::plane_form(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-6, [0, 0, 2])])
}

fn planted7() -> MHPoly<BigInt> {
    MHPoly::plane_form(&[(1, [2, 0, 0]), (1, [1, 1, 0]), (7, [0, 2, 0]), (7, [0, 0, 2])])
}

// -- criterion 1 -----------------------------------------------------------

/// Pascal-triangle binomials, fully independent of the library path.
fn binom_oracle(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1)];
        for i in 1..row.len() {
            next.push(&row[i - 1] + &row[i]);
        }
        next.push(BigInt::from(1));
        row = next;
    }
    row[k].clone()
}

/// Counts exponent rows of total x over `vars` variables by recursion.
fn count_monomials(x: u32, vars: u32) -> u64 {
    if vars == 1 {
        1
    } else {
        (0..=x).map(|e| count_monomials(x - e, vars - 1)).sum()
    }
}

#[test]
fn criterion_1_exact_constants() {
    criterion(1, "constants, exact", || {
        let start = Instant::now();
        // ranks against the enumeration oracle
        assert_eq!(rank_n(1, 1, 2), int(count_monomials(1, 3).pow(2) as i64 - 1));
        assert_eq!(rank_n(1, 1, 2), int(8));
        assert_eq!(rank_n(2, 1, 2), int(count_monomials(2, 3).pow(2) as i64 - 1));
        assert_eq!(rank_n(2, 1, 2), int(35));
        // harmonic constants against the summation oracle
        assert_eq!(sigma(1).unwrap(), rat(1, 2));
        assert_eq!(sigma(2).unwrap(), rat(5, 4));
        // degrees of the decomposable locus against Pascal binomials
        let p221 = BoundParams::new(2, 2, 1, 1).unwrap();
        let want = BigRat::new(binom_oracle(16, 8), int(2));
        assert_eq!(deg_w(&p221).unwrap(), want);
        assert_eq!(deg_w(&p221).unwrap(), BigRat::from(int(6435)));
        let p231 = BoundParams::new(2, 3, 1, 1).unwrap();
        assert_eq!(deg_w(&p231).unwrap(), BigRat::from(binom_oracle(43, 8)));
        assert_eq!(deg_w(&p231).unwrap(), BigRat::from(int(145_008_513)));
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
        format!("all six constants exact in {elapsed:?}")
    });
}

// -- criterion 2 -----------------------------------------------------------

#[test]
fn criterion_2_conic_end_to_end() {
    criterion(2, "conic end-to-end", || {
        let start = Instant::now();
        let inst =
            Instance::new("conic-N6", f6(), 1, 100, DEFAULT_COST_CAP, 1).unwrap();
        let report = scan_primes(&inst, 1, false).unwrap();
        assert_eq!(report.reducible, vec![2, 3], "reducible set");
        assert_eq!(report.verdict, Verdict::Holds);

        // h_K(P_Z) = (1/2) log 228 within 1e-9
        let hk_want = 0.5 * 228.0_f64.ln();
        assert!((report.h_k.to_f64() - hk_want).abs() < 1e-9);

        // itemized terms against hand evaluation, 1e-3 relative
        let hw_hand = 0.5 * 8.5 * 12870.0 * (387_420_489.0_f64 * 81.0 / 17.0).ln();
        let log2_hand = 0.5 * 6435.0 * 36.0 * std::f64::consts::LN_2;
        let height_hand = 6435.0 * hk_want;
        let total_hand = hw_hand + log2_hand + height_hand;
        let rel = |got: f64, want: f64| (got - want).abs() / want;
        assert!(rel(report.bound.h_w_bound.to_f64(), hw_hand) < 1e-3);
        assert!(rel(report.bound.h_w_bound.to_f64(), 1.1670e6) < 1e-3);
        assert!(rel(report.bound.log2_term.to_f64(), log2_hand) < 1e-3);
        assert!(rel(report.bound.height_term.to_f64(), height_hand) < 1e-3);
        assert!(rel(report.bound.total.to_f64(), total_hand) < 1e-3);
        assert!(rel(report.bound.total.to_f64(), 1.2648e6) < 1e-3);

        // log prod q_j = log 6
        assert!((report.log_prod.to_f64() - 6.0_f64.ln()).abs() < 1e-9);

        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs_f64() < 60.0,
            "took {elapsed:?}, budget 60 s single-threaded"
        );
        format!(
            "reducible {{2, 3}}, h_K = (1/2) log 228, total {:.6e} in {elapsed:?}",
            report.bound.total.to_f64()
        )
    });
}

// -- criterion 3 -----------------------------------------------------------

#[test]
fn criterion_3_planted_instance() {
    criterion(3, "planted instance", || {
        let inst =
            Instance::new("planted", planted7(), 1, 100, DEFAULT_COST_CAP, 1).unwrap();
        let hypothesis = check_hypothesis(&inst.form, 100, DEFAULT_COST_CAP).unwrap();
        assert_eq!(hypothesis.certified, Some(5), "certificate prime");

        let report = scan_primes(&inst, 1, false).unwrap();
        assert_eq!(report.reducible, vec![3, 7], "reducible set");
        assert_eq!(report.verdict, Verdict::Holds);

        // witnesses re-multiply exactly, re-assembled here from scratch
        let mut checked = 0;
        for row in &report.rows {
            if let Some(w) = &row.witness {
                let field = FiniteField::construct(w.prime, w.extension_degree).unwrap();
                let fiber = inst.form.reduce_mod(&field);
                let product = w.g.mul(&w.h).unwrap().mul_coeff(&w.scalar);
                assert_eq!(product, lift_to_extension(&fiber, &w.field));
                checked += 1;
            }
        }
        assert_eq!(checked, 2);
        format!("certificate at p = 5, reducible {{3, 7}}, {checked} witnesses re-multiplied")
    });
}

// -- criterion 4 -----------------------------------------------------------

fn random_primitive_form(rng: &mut SplitMix64, d: u32) -> MHPoly<BigInt> {
    loop {
        let mut f = MHPoly::plane_form(&[]);
        for _ in 0..4 {
            let e0 = rng.below(d as u64 + 1) as u32;
            let e1 = rng.below((d - e0) as u64 + 1) as u32;
            let c = rng.signed(9);
            if c != 0 {
                f = f.with_term(int(c), &[&[e0, e1, d - e0 - e1]]).unwrap();
            }
        }
        if f.is_zero() {
            continue;
        }
        let (_, prim) = f.content_primitive().unwrap();
        return prim;
    }
}

#[test]
fn criterion_4_specialization() {
    criterion(4, "specialization identity", || {
        let mut rng = SplitMix64::new(0xacce9);
        let mut count = 0;
        for _ in 0..25 {
            let d = 1 + rng.below(3) as u32;
            let f = random_primitive_form(&mut rng, d);
            for p in [2u64, 3, 5, 7, 11] {
                let report = chow_specialize_check(&f, p).unwrap();
                assert!(report.holds, "specialization failed for {f} at p = {p}");
            }
            count += 1;
        }
        format!("{count} random forms x 5 primes, all exact")
    });
}

// -- criterion 5 -----------------------------------------------------------

#[test]
fn criterion_5_chow_multiplicativity() {
    criterion(5, "Chow multiplicativity / product-map compatibility", || {
        let mut rng = SplitMix64::new(0xacce5);
        for _ in 0..25 {
            let dg = 1 + rng.below(2) as u32;
            let g = random_primitive_form(&mut rng, dg);
            let dh = 1 + rng.below(2) as u32;
            let h = random_primitive_form(&mut rng, dh);
            let product = g.mul(&h).unwrap();
            let chow_product = chow_plane_curve(&product).unwrap();
            let chow_g = chow_plane_curve(&g).unwrap();
            let chow_h = chow_plane_curve(&h).unwrap();
            let psi = psi_product(chow_g.vector(), chow_h.vector()).unwrap();
            assert_eq!(chow_product.vector(), &psi, "G = {g}, H = {h}");
        }
        String::from("25 random pairs, vectors exactly equal")
    });
}

// -- criterion 6 -----------------------------------------------------------

/// Exhaustive trial division oracle for univariate factorization.
fn trial_factor(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.modulus_prime();
    let top = f.degree().unwrap_or(0);
    let mut rest = f.monic();
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for deg in 1..=top {
        if rest.degree() <= Some(0) {
            break;
        }
        for idx in 0..(p as u128).pow(deg as u32) {
            let mut coeffs = Vec::with_capacity(deg + 1);
            let mut v = idx;
            for _ in 0..deg {
                coeffs.push((v % p as u128) as u64);
                v /= p as u128;
            }
            coeffs.push(1);
            let cand = FpPoly::from_raw(p, coeffs);
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(&cand);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((cand, mult));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    out
}

fn all_fibers(p: u64, d: u32) -> Vec<MHPoly<chowbez_core::exactnum::FieldElem>> {
    let field = FiniteField::construct(p, 1).unwrap();
    let exps: Vec<(u32, u32)> = (0..=d)
        .rev()
        .flat_map(|e0| (0..=d - e0).rev().map(move |e1| (e0, e1)))
        .collect();
    let total = (p as u128).pow(exps.len() as u32);
    let mut out = Vec::with_capacity(total as usize - 1);
    for mut idx in 1..total {
        let mut f = MHPoly::zero(Shape::new(0, 2));
        for &(e0, e1) in &exps {
            let c = (idx % p as u128) as u64;
            idx /= p as u128;
            if c != 0 {
                f.add_term(Mono::from_flat(vec![e0, e1, d - e0 - e1]), field.from_u64(c));
            }
        }
        out.push(f);
    }
    out
}

#[test]
fn criterion_6_factorization_oracle_equivalence() {
    criterion(6, "factorization oracle equivalence", || {
        let start = Instant::now();

        // univariate: every monic polynomial, p in {2, 3, 5}, degree <= 4
        let mut univ_count = 0u64;
        for p in [2u64, 3, 5] {
            for deg in 1..=4usize {
                for idx in 0..(p as u128).pow(deg as u32) {
                    let mut coeffs = Vec::with_capacity(deg + 1);
                    let mut v = idx;
                    for _ in 0..deg {
                        coeffs.push((v % p as u128) as u64);
                        v /= p as u128;
                    }
                    coeffs.push(1);
                    let f = FpPoly::from_raw(p, coeffs);
                    let fl = univ_factor(&f, 0xACCE + idx as u64).unwrap();
                    assert_eq!(fl.product(p), f);
                    assert_eq!(fl.factors, trial_factor(&f), "p={p} idx={idx}");
                    univ_count += 1;
                }
            }
        }

        // decomposition: every nonzero plane form, p in {2, 3}, d <= 3, all n
        let mut decomp_count = 0u64;
        for p in [2u64, 3] {
            for d in 2..=3u32 {
                for f in all_fibers(p, d) {
                    for n in 1..=d - 1 {
                        let a = find_decomposition(&f, n, DEFAULT_COST_CAP).unwrap();
                        let b = decomposition_oracle(&f, n, DEFAULT_COST_CAP).unwrap();
                        match (&a, &b) {
                            (DecompOutcome::Found(wa), DecompOutcome::Found(wb)) => {
                                assert_eq!(
                                    wa.extension_degree, wb.extension_degree,
                                    "level mismatch on {f} (p={p}, n={n})"
                                );
                                // linear searches share the enumeration
                                // order, so the witnesses are identical
                                assert_eq!(wa.g, wb.g, "on {f} (p={p}, n={n})");
                                assert_eq!(wa.h, wb.h, "on {f} (p={p}, n={n})");
                                assert_eq!(wa.scalar, wb.scalar);
                            }
                            (DecompOutcome::NoneFound, DecompOutcome::NoneFound) => {}
                            other => panic!("disagreement on {f} (p={p}, n={n}): {other:?}"),
                        }
                        decomp_count += 1;
                    }
                }
            }
        }

        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs_f64() < 300.0,
            "took {elapsed:?}, budget 5 min"
        );
        format!(
            "{univ_count} univariate + {decomp_count} decomposition comparisons in {elapsed:?}"
        )
    });
}

// -- criterion 7 -----------------------------------------------------------

#[test]
fn criterion_7_height_properties() {
    criterion(7, "height properties", || {
        let mut rng = SplitMix64::new(0xacce7);
        let tol = rat(1, 1_000_000_000);
        for _ in 0..1000 {
            let len = 2 + rng.below(7) as usize;
            let v: Vec<BigInt> = (0..len).map(|_| int(rng.signed(1000))).collect();
            if v.iter().all(|c| c == &int(0)) {
                continue;
            }
            let hk = point_height_hk(&v).unwrap();
            let hb = point_height_hb(&v).unwrap();
            assert!(hk.le_within(&hb, &tol), "h_K > h_B at {v:?}");
        }

        let mut sampled = 0u64;
        while sampled < 1000 {
            let r = rng.below(2) as usize;
            let s = 1 + rng.below(2) as usize;
            let d = 2 + rng.below(2) as u32;
            let n = 1 + rng.below(d as u64 - 1) as u32;
            let shape = Shape::new(r, s);
            let sample = |rng: &mut SplitMix64, deg: u32| {
                let mut f = MHPoly::zero(shape);
                for _ in 0..4 {
                    let mut flat = vec![0u32; shape.total_vars()];
                    for block in 0..shape.blocks() {
                        for _ in 0..deg {
                            flat[block * shape.block_vars() + rng.below(shape.block_vars() as u64) as usize] += 1;
                        }
                    }
                    f.add_term(Mono::from_flat(flat), int(rng.signed(9)));
                }
                f
            };
            let f = sample(&mut rng, n);
            let g = sample(&mut rng, d - n);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let ratio = phi_ratio_exact(&f, &g).unwrap();
            let bound = BigRat::from(
                int(d as i64 + 1).pow(3 * (r as u32 + 1) * (s as u32 + 1)),
            );
            assert!(ratio <= bound, "phi bound violated at r={r} s={s} d={d} n={n}");
            sampled += 1;
        }
        String::from("1000 height comparisons + 1000 metric ratios within bounds")
    });
}

// -- criterion 8 -----------------------------------------------------------

#[test]
fn criterion_8_parallel_determinism() {
    criterion(8, "parallel-scan determinism", || {
        let fixtures = chowbez_cli::cli::regression_fixtures(chowbez_cli::cli::Suite::All).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let mut compared = 0;
        for inst in &fixtures {
            let path = dir.path().join(format!("{}.json", inst.label));
            let file = PolyFile::from_poly(&inst.form).unwrap();
            std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
            let mut outputs = Vec::new();
            for jobs in ["1", "8"] {
                let csv_path = dir.path().join(format!("{}-{jobs}.csv", inst.label));
                let out = std::process::Command::new(env!("CARGO_BIN_EXE_chowbez"))
                    .args([
                        "scan",
                        "--input",
                        path.to_str().unwrap(),
                        "--n",
                        &inst.n.to_string(),
                        "--pmax",
                        &inst.p_max.to_string(),
                        "--jobs",
                        jobs,
                        "--seed",
                        &inst.seed.to_string(),
                        "--csv",
                        csv_path.to_str().unwrap(),
                    ])
                    .output()
                    .unwrap();
                assert!(
                    out.status.success(),
                    "scan failed on {}: {}",
                    inst.label,
                    String::from_utf8_lossy(&out.stderr)
                );
                let csv = std::fs::read(&csv_path).unwrap();
                outputs.push((out.stdout, csv));
            }
            assert_eq!(
                outputs[0], outputs[1],
                "jobs=1 and jobs=8 outputs differ on {}",
                inst.label
            );
            compared += 1;
        }
        format!("{compared} fixtures byte-identical between --jobs 1 and --jobs 8")
    });
}
