//! In-binary oracle-equivalence and invariant suites, a fast subset of
//! the full test battery, runnable in the field via `chowbez selftest`.

use chowbez_core::chowforms::chow_specialize_check;
use chowbez_core::exactnum::rng::SplitMix64;
use chowbez_core::exactnum::{int, rat, FiniteField, FpPoly};
use chowbez_core::heights::{phi_ratio_exact, point_height_hb, point_height_hk};
use chowbez_core::modfactor::{
    decomposition_oracle, find_decomposition, univ_factor, DecompOutcome, DEFAULT_COST_CAP,
};
use chowbez_core::multipoly::{MHPoly, Mono, Shape};
use chowbez_core::exactnum::{BigInt, BigRat};

pub struct SelfTest {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<(), String>) -> SelfTest {
    match run() {
        Ok(()) => SelfTest {
            name,
            passed: true,
            detail: String::from("ok"),
        },
        Err(detail) => SelfTest {
            name,
            passed: false,
            detail,
        },
    }
}

/// Run all suites; the caller prints one line per entry.
pub fn run_all() -> Vec<SelfTest> {
    vec![
        check("factorization-remultiplies", factor_remultiplies),
        check("decomposition-oracle-agreement", decomposition_agreement),
        check("height-inequalities", height_inequalities),
        check("specialization-identity", specialization_identity),
        check("field-axioms", field_axioms),
    ]
}

fn factor_remultiplies() -> Result<(), String> {
    for p in [2u64, 3, 5] {
        for deg in 1..=3usize {
            for idx in 0..(p as u128).pow(deg as u32) {
                let mut coeffs = Vec::with_capacity(deg + 1);
                let mut v = idx;
                for _ in 0..deg {
                    coeffs.push((v % p as u128) as u64);
                    v /= p as u128;
                }
                coeffs.push(1);
                let f = FpPoly::from_raw(p, coeffs);
                let fl = univ_factor(&f, 0x5e1f).map_err(|e| e.to_string())?;
                if fl.product(p) != f {
                    return Err(format!("product mismatch at p={p} idx={idx}"));
                }
            }
        }
    }
    Ok(())
}

fn all_forms(p: u64, d: u32) -> Vec<MHPoly<chowbez_core::exactnum::FieldElem>> {
    let field = FiniteField::construct(p, 1).unwrap();
    let exps: Vec<(u32, u32)> = (0..=d)
        .rev()
        .flat_map(|e0| (0..=d - e0).rev().map(move |e1| (e0, e1)))
        .collect();
    let len = exps.len();
    let total = (p as u128).pow(len as u32);
    let mut out = Vec::new();
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

fn decomposition_agreement() -> Result<(), String> {
    // p = 2 exhaustively at d = 2, sampled slices elsewhere; the full
    // grid runs in the acceptance suite
    for f in all_forms(2, 2) {
        agree(&f, 1)?;
    }
    for (i, f) in all_forms(3, 2).into_iter().enumerate() {
        if i % 7 == 0 {
            agree(&f, 1)?;
        }
    }
    for (i, f) in all_forms(2, 3).into_iter().enumerate() {
        if i % 11 == 0 {
            agree(&f, 1)?;
            agree(&f, 2)?;
        }
    }
    Ok(())
}

fn agree(f: &MHPoly<chowbez_core::exactnum::FieldElem>, n: u32) -> Result<(), String> {
    let a = find_decomposition(f, n, DEFAULT_COST_CAP).map_err(|e| e.to_string())?;
    let b = decomposition_oracle(f, n, DEFAULT_COST_CAP).map_err(|e| e.to_string())?;
    let same = matches!(
        (&a, &b),
        (DecompOutcome::Found(_), DecompOutcome::Found(_))
            | (DecompOutcome::NoneFound, DecompOutcome::NoneFound)
    );
    if !same {
        return Err(format!("disagreement on {f} at n={n}: {a:?} vs {b:?}"));
    }
    Ok(())
}

fn height_inequalities() -> Result<(), String> {
    let mut rng = SplitMix64::new(0x4e164);
    let tol = rat(1, 1_000_000_000);
    for _ in 0..200 {
        let v: Vec<BigInt> = (0..5).map(|_| int(rng.signed(100))).collect();
        if v.iter().all(|c| c == &int(0)) {
            continue;
        }
        let hk = point_height_hk(&v).map_err(|e| e.to_string())?;
        let hb = point_height_hb(&v).map_err(|e| e.to_string())?;
        if !hk.le_within(&hb, &tol) {
            return Err(format!("h_K > h_B at {v:?}"));
        }
    }
    // metric comparison bound for plane-curve shapes
    let shape = Shape::new(1, 2);
    let mut sampled = 0;
    while sampled < 200 {
        let d = 2 + rng.below(2) as u32;
        let n = 1 + rng.below(d as u64 - 1) as u32;
        let sample = |rng: &mut SplitMix64, deg: u32| {
            let mut f = MHPoly::zero(shape);
            for _ in 0..4 {
                let mut flat = vec![0u32; 6];
                for block in 0..2 {
                    for _ in 0..deg {
                        flat[block * 3 + rng.below(3) as usize] += 1;
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
        let ratio = phi_ratio_exact(&f, &g).map_err(|e| e.to_string())?;
        let bound = BigRat::from(int(d as i64 + 1).pow(18));
        if ratio > bound {
            return Err(format!("phi ratio {ratio} above bound at d={d}"));
        }
        sampled += 1;
    }
    Ok(())
}

fn specialization_identity() -> Result<(), String> {
    let mut rng = SplitMix64::new(0x1dea);
    let mut tested = 0;
    while tested < 8 {
        let d = 1 + rng.below(3) as u32;
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
        let (_, prim) = f.content_primitive().map_err(|e| e.to_string())?;
        for p in [2u64, 3, 5] {
            let report = chow_specialize_check(&prim, p).map_err(|e| e.to_string())?;
            if !report.holds {
                return Err(format!("specialization failed for {prim} at p={p}"));
            }
        }
        tested += 1;
    }
    Ok(())
}

fn field_axioms() -> Result<(), String> {
    for (p, k) in [(2u64, 3usize), (3, 2), (5, 2)] {
        let field = FiniteField::construct(p, k).map_err(|e| e.to_string())?;
        let mut rng = SplitMix64::new(0xf1e1d);
        for _ in 0..100 {
            let digits: Vec<u64> = (0..k).map(|_| rng.below(p)).collect();
            let a = field.elem(&digits).map_err(|e| e.to_string())?;
            if a.frobenius_iterated(k) != a {
                return Err(format!("Frobenius order violated in F_{{{p}^{k}}}"));
            }
            if !a.is_zero() {
                let inv = a.inv().expect("nonzero inverse");
                if a.mul(&inv) != field.one() {
                    return Err(format!("inverse failed in F_{{{p}^{k}}}"));
                }
            }
        }
    }
    Ok(())
}
