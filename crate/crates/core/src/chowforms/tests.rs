use super::*;
use crate::exactnum::rng::SplitMix64;
use crate::exactnum::{int, FieldElem, FiniteField};
use crate::heights::point_height_hk;
use alloc::collections::BTreeMap;
use num_traits::Signed;

fn f6() -> MHPoly<BigInt> {
    MHPoly::plane_form(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-6, [0, 0, 2])])
}

#[test]
fn line_gives_the_degree_one_chow_form() {
    let f = MHPoly::plane_form(&[(1, [1, 0, 0])]);
    let chow = chow_plane_curve(&f).unwrap();
    // u1 v2 - u2 v1, already sign-normalized
    let poly = chow.to_poly();
    assert_eq!(poly.num_terms(), 2);
    assert_eq!(poly.multidegree(), Some(alloc::vec![1, 1]));
    let want = MHPoly::zero(Shape::new(1, 2))
        .with_term(int(1), &[&[0, 1, 0], &[0, 0, 1]])
        .unwrap()
        .with_term(int(-1), &[&[0, 0, 1], &[0, 1, 0]])
        .unwrap();
    assert_eq!(poly, want);
}

#[test]
fn unit_circle_chow_form() {
    let f = MHPoly::plane_form(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-1, [0, 0, 2])]);
    let chow = chow_plane_curve(&f).unwrap();
    // (u1 v2 - u2 v1)^2 + (u2 v0 - u0 v2)^2 - (u0 v1 - u1 v0)^2, stored
    // with the sign that makes the leading (canonical) coefficient positive
    let [i0, i1, i2] = cross_images_int();
    let want = i0
        .mul(&i0)
        .unwrap()
        .add(&i1.mul(&i1).unwrap())
        .unwrap()
        .sub(&i2.mul(&i2).unwrap())
        .unwrap();
    let (_, want_normalized) = want.content_primitive().unwrap();
    assert_eq!(chow.to_poly(), want_normalized);
    assert!(chow.to_poly() == want || chow.to_poly() == want.neg());
}

#[test]
fn conic_chow_coefficients_and_height() {
    let chow = chow_plane_curve(&f6()).unwrap();
    let poly = chow.to_poly();
    assert_eq!(poly.num_terms(), 9);
    assert_eq!(poly.multidegree(), Some(alloc::vec![2, 2]));
    // the expansion has coefficient multiset {1,-2,1,1,-2,1,-6,12,-6};
    // the stored representative is normalized to a positive leading
    // coefficient, i.e. determined up to this global sign
    let mut multiset: BTreeMap<BigInt, usize> = BTreeMap::new();
    for (_, c) in poly.terms() {
        *multiset.entry(c.abs()).or_default() += 1;
    }
    let mut want: BTreeMap<BigInt, usize> = BTreeMap::new();
    for v in [1i64, 2, 1, 1, 2, 1, 6, 12, 6] {
        *want.entry(int(v)).or_default() += 1;
    }
    assert_eq!(multiset, want);
    let raw: BigInt = poly.terms().map(|(_, c)| c.clone()).sum();
    // the signed sum of the expansion is 1-2+1+1-2+1-6+12-6 = 0
    assert_eq!(raw, int(0));
    // h_K of the Chow point is (1/2) log 228
    let h = point_height_hk(chow.vector().entries()).unwrap();
    assert!((h.to_f64() - 0.5 * 228.0_f64.ln()).abs() < 1e-12);
}

#[test]
fn rejects_bad_inputs() {
    // non-homogeneous
    let f = MHPoly::plane_form(&[(1, [2, 0, 0]), (1, [1, 0, 0])]);
    assert!(chow_plane_curve(&f).is_err());
    // imprimitive
    let f = MHPoly::plane_form(&[(2, [2, 0, 0]), (4, [0, 2, 0])]);
    assert!(chow_plane_curve(&f).is_err());
    // zero
    assert!(chow_plane_curve(&MHPoly::plane_form(&[])).is_err());
}

fn random_primitive_form(rng: &mut SplitMix64, d: u32) -> MHPoly<BigInt> {
    loop {
        let mut f = MHPoly::plane_form(&[]);
        for _ in 0..4 {
            let e0 = rng.below(d as u64 + 1) as u32;
            let e1 = rng.below((d - e0) as u64 + 1) as u32;
            let c = rng.signed(9);
            if c != 0 {
                f = f
                    .with_term(int(c), &[&[e0, e1, d - e0 - e1]])
                    .unwrap();
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
fn chow_is_multiplicative() {
    let mut rng = SplitMix64::new(0xc0ffee);
    for _ in 0..25 {
        let dg = 1 + rng.below(2) as u32;
        let g = random_primitive_form(&mut rng, dg);
        let dh = 1 + rng.below(2) as u32;
        let h = random_primitive_form(&mut rng, dh);
        let gh = g.mul(&h).unwrap();
        let chow_gh = chow_plane_curve(&gh).unwrap();
        let chow_g = chow_plane_curve(&g).unwrap();
        let chow_h = chow_plane_curve(&h).unwrap();
        let prod = psi_product(chow_g.vector(), chow_h.vector()).unwrap();
        assert_eq!(chow_gh.vector(), &prod, "G = {g}, H = {h}");
    }
}

#[test]
fn psi_on_simple_vectors() {
    // r=0, s=1: X0 * (X0 + X1) -> (1, 1, 0)
    let shape = Shape::new(0, 1);
    let a = MHPoly::zero(shape)
        .with_term(int(1), &[&[1, 0]])
        .unwrap()
        .to_coeff_vector()
        .unwrap();
    let b = MHPoly::zero(shape)
        .with_term(int(1), &[&[1, 0]])
        .unwrap()
        .with_term(int(1), &[&[0, 1]])
        .unwrap()
        .to_coeff_vector()
        .unwrap();
    let prod = psi_product(&a, &b).unwrap();
    assert_eq!(prod.entries(), &[int(1), int(1), int(0)]);

    // zero vector is rejected
    let zero = CoeffVector::new(shape, 1, alloc::vec![int(0), int(0)]).unwrap();
    assert!(psi_product(&a, &zero).is_err());
}

fn eval_ff(f: &MHPoly<FieldElem>, xs: &[FieldElem]) -> FieldElem {
    let field = xs[0].field().clone();
    let mut acc = field.zero();
    for (m, c) in f.terms() {
        let mut term = c.clone();
        for (var, &e) in m.flat().iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&xs[var]);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// Projective points of P^2 over the field, one normalized representative
/// each.
fn proj_points(field: &alloc::sync::Arc<FiniteField>) -> Vec<[FieldElem; 3]> {
    let q = field.order_u64().unwrap();
    let mut out = Vec::new();
    for code in 0..q * q * q {
        let c = [code % q, (code / q) % q, code / (q * q)];
        let elems = [
            field.decode(c[0]),
            field.decode(c[1]),
            field.decode(c[2]),
        ];
        let first = elems.iter().position(|e| !e.is_zero());
        match first {
            None => continue,
            Some(i) => {
                if elems[i] != field.one() {
                    continue;
                }
                if elems[..i].iter().any(|e| !e.is_zero()) {
                    continue;
                }
            }
        }
        out.push(elems);
    }
    out
}

fn cross(u: &[FieldElem; 3], v: &[FieldElem; 3]) -> [FieldElem; 3] {
    [
        u[1].mul(&v[2]).sub(&u[2].mul(&v[1])),
        u[2].mul(&v[0]).sub(&u[0].mul(&v[2])),
        u[0].mul(&v[1]).sub(&u[1].mul(&v[0])),
    ]
}

#[test]
fn vanishing_oracle_validates_the_cross_product_realization() {
    // The reduced Chow form vanishes at (u, v) exactly when the lines u, v
    // and the curve share a point of P^2 over the algebraic closure.
    let mut rng = SplitMix64::new(0x0a11);
    for p in [2u64, 3, 5] {
        let fp = FiniteField::construct(p, 1).unwrap();
        let fp2 = FiniteField::construct(p, 2).unwrap();
        let duals = proj_points(&fp);
        for _ in 0..4 {
            let d = 1 + rng.below(2) as u32;
            let f = random_primitive_form(&mut rng, d);
            let f_red = f.reduce_mod(&fp);
            if f_red.is_zero() {
                continue;
            }
            let chow_red = chow_plane_curve(&f).unwrap().to_poly().reduce_mod(&fp);
            // lift of F mod p into F_{p^2} for the coincident-lines case
            let f_lift = f.reduce_mod(&fp2);
            for u in &duals {
                for v in &duals {
                    let coords: Vec<FieldElem> = u.iter().chain(v.iter()).cloned().collect();
                    let vanishes = eval_ff(&chow_red, &coords).is_zero();
                    let x = cross(u, v);
                    let expected = if x.iter().any(|e| !e.is_zero()) {
                        // distinct lines meet in the single point u x v
                        eval_ff(&f_red, &x).is_zero()
                    } else {
                        // coincident lines: intersection points of line and
                        // curve live over an extension of degree <= d <= 2
                        line_meets_curve(&fp2, u, &f_lift)
                    };
                    assert_eq!(vanishes, expected, "p={p} f={f}");
                }
            }
        }
    }
}

/// Whether the line with F_p coefficients `u` meets `V(F)` over F_{p^2}.
fn line_meets_curve(
    fp2: &alloc::sync::Arc<FiniteField>,
    u: &[FieldElem; 3],
    f_lift: &MHPoly<FieldElem>,
) -> bool {
    let lift = |e: &FieldElem| fp2.from_u64(e.digits()[0]);
    let ul = [lift(&u[0]), lift(&u[1]), lift(&u[2])];
    // kernel basis of u . x = 0
    let (pt1, pt2) = if !ul[0].is_zero() {
        (
            [ul[1].neg(), ul[0].clone(), fp2.zero()],
            [ul[2].neg(), fp2.zero(), ul[0].clone()],
        )
    } else if !ul[1].is_zero() {
        (
            [ul[1].clone(), ul[0].neg(), fp2.zero()],
            [fp2.zero(), ul[2].neg(), ul[1].clone()],
        )
    } else {
        (
            [fp2.one(), fp2.zero(), fp2.zero()],
            [fp2.zero(), fp2.one(), fp2.zero()],
        )
    };
    let q2 = fp2.order_u64().unwrap();
    // (s : t) over P^1(F_{p^2})
    for code in 0..=q2 {
        let (s, t) = if code == q2 {
            (fp2.one(), fp2.zero())
        } else {
            (fp2.decode(code), fp2.one())
        };
        let x: Vec<FieldElem> = (0..3)
            .map(|i| s.mul(&pt1[i]).add(&t.mul(&pt2[i])))
            .collect();
        if x.iter().all(|e| e.is_zero()) {
            continue;
        }
        if eval_ff(f_lift, &x).is_zero() {
            return true;
        }
    }
    false
}

#[test]
fn specialization_holds_for_the_conic() {
    for p in [5u64, 3] {
        let report = chow_specialize_check(&f6(), p).unwrap();
        assert!(report.holds, "p = {p}");
    }
}

#[test]
fn specialization_holds_for_lines_at_every_prime() {
    let f = MHPoly::plane_form(&[(1, [1, 0, 0])]);
    for p in [2u64, 3, 5, 7, 11] {
        assert!(chow_specialize_check(&f, p).unwrap().holds);
    }
}

#[test]
fn specialization_on_random_forms() {
    let mut rng = SplitMix64::new(0x5bec);
    for _ in 0..5 {
        let d = 1 + rng.below(3) as u32;
        let f = random_primitive_form(&mut rng, d);
        for p in [2u64, 3, 5, 7, 11] {
            assert!(chow_specialize_check(&f, p).unwrap().holds, "f={f} p={p}");
        }
    }
}

#[test]
fn zero_cycle_of_sqrt_two() {
    // f = t^2 - 2, h = t^2: (u0 + 2 u2)^2 - 2 u1^2
    let f = alloc::vec![int(-2), int(0), int(1)];
    let h = alloc::vec![int(0), int(0), int(1)];
    let chow = chow_zero_cycle(&f, &h).unwrap();
    let want = MHPoly::plane_form(&[(1, [2, 0, 0]), (4, [1, 0, 1]), (4, [0, 0, 2]), (-2, [0, 2, 0])]);
    assert_eq!(chow.to_poly(), want);
    assert_eq!(chow.degree(), 2);
}

#[test]
fn zero_cycle_of_rational_points() {
    // f = (t-1)(t-2), h = 0: (u0 + u1)(u0 + 2 u1) up to sign
    let f = alloc::vec![int(2), int(-3), int(1)];
    let chow = chow_zero_cycle(&f, &[]).unwrap();
    let l1 = MHPoly::plane_form(&[(1, [1, 0, 0]), (1, [0, 1, 0])]);
    let l2 = MHPoly::plane_form(&[(1, [1, 0, 0]), (2, [0, 1, 0])]);
    assert_eq!(chow.to_poly(), l1.mul(&l2).unwrap());

    // single point (1 : 5 : 0)
    let f = alloc::vec![int(-5), int(1)];
    let chow = chow_zero_cycle(&f, &[]).unwrap();
    let want = MHPoly::plane_form(&[(1, [1, 0, 0]), (5, [0, 1, 0])]);
    assert_eq!(chow.to_poly(), want);
}

#[test]
fn zero_cycle_matches_the_root_product_for_split_polynomials() {
    // f = t^3 - 7t + 6 = (t-1)(t-2)(t+3), h = t^2
    let f = alloc::vec![int(6), int(-7), int(0), int(1)];
    let h = alloc::vec![int(0), int(0), int(1)];
    let chow = chow_zero_cycle(&f, &h).unwrap();
    let linear = |t: i64| {
        MHPoly::plane_form(&[(1, [1, 0, 0]), (t, [0, 1, 0]), (t * t, [0, 0, 1])])
    };
    let prod = linear(1)
        .mul(&linear(2))
        .unwrap()
        .mul(&linear(-3))
        .unwrap();
    let (_, prim) = prod.content_primitive().unwrap();
    assert_eq!(chow.to_poly(), prim);
}

#[test]
fn zero_cycle_rejects_non_squarefree_input() {
    // (t-1)^2
    let f = alloc::vec![int(1), int(-2), int(1)];
    assert!(matches!(chow_zero_cycle(&f, &[]), Err(Error::NotSquarefree)));
    // degree-0 input
    assert!(chow_zero_cycle(&[int(3)], &[]).is_err());
    // a deflection of degree >= d is reduced away by the content: the
    // cycle only sees h mod f
    let f = alloc::vec![int(-2), int(0), int(1)];
    let h_hi = alloc::vec![int(0), int(0), int(0), int(1)]; // t^3 = 2t on the cycle
    let h_lo = alloc::vec![int(0), int(2)];
    assert_eq!(
        chow_zero_cycle(&f, &h_hi).unwrap(),
        chow_zero_cycle(&f, &h_lo).unwrap()
    );
}
