//! Sylvester resultants by fraction-free (Bareiss) elimination.
//!
//! The entries stay in the coefficient ring throughout: integers or
//! integer polynomials, never fractions. Row convention: the `deg g`
//! shifted rows of `f` come first, then the `deg f` rows of `g`, each row
//! holding descending coefficients. With that fixed order,
//! `Res(f, g) = lc(f)^deg(g) * prod g(alpha)` over the roots of `f`.

use super::MHPoly;
use crate::exactnum::BigInt;
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Zero};

/// Integral-domain operations needed by the elimination; implemented for
/// `BigInt` and for integer multihomogeneous polynomials.
pub trait ResultantRing: Clone + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// Exact division; `None` when the divisor does not divide. Bareiss
    /// only divides by previous pivots, for which divisibility is a
    /// guaranteed, so `None` here means an internal error upstream.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}

impl ResultantRing for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = num_integer::Integer::div_rem(self, rhs);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
}

impl ResultantRing for MHPoly<BigInt> {
    fn is_zero(&self) -> bool {
        MHPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        MHPoly::zero(self.shape())
    }
    fn one_like(&self) -> Self {
        let flat = alloc::vec![0u32; self.shape().total_vars()];
        let mut p = MHPoly::zero(self.shape());
        p.add_term(super::Mono::from_flat(flat), BigInt::one());
        p
    }
    fn mul(&self, rhs: &Self) -> Self {
        MHPoly::mul(self, rhs).expect("resultant entries share a shape")
    }
    fn sub(&self, rhs: &Self) -> Self {
        MHPoly::sub(self, rhs).expect("resultant entries share a shape")
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        MHPoly::exact_div(self, rhs)
    }
}

fn trim<T: ResultantRing>(coeffs: &[T]) -> &[T] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].is_zero() {
        n -= 1;
    }
    &coeffs[..n]
}

/// Resultant of two univariate polynomials given by ascending coefficient
/// slices. Both must have degree at least one.
pub fn sylvester_resultant<T: ResultantRing>(f: &[T], g: &[T]) -> Result<T> {
    let f = trim(f);
    let g = trim(g);
    if f.len() < 2 || g.len() < 2 {
        return Err(Error::Structure(String::from(
            "resultant requires two polynomials of degree >= 1",
        )));
    }
    let df = f.len() - 1;
    let dg = g.len() - 1;
    let n = df + dg;
    let zero = f[0].zero_like();
    let mut matrix: Vec<Vec<T>> = alloc::vec![alloc::vec![zero.clone(); n]; n];
    // f-rows first, descending coefficients shifted right
    for i in 0..dg {
        for (j, c) in f.iter().rev().enumerate() {
            matrix[i][i + j] = c.clone();
        }
    }
    for i in 0..df {
        for (j, c) in g.iter().rev().enumerate() {
            matrix[dg + i][i + j] = c.clone();
        }
    }
    bareiss_determinant(matrix)
}

/// Fraction-free determinant; row swaps tracked for the sign.
fn bareiss_determinant<T: ResultantRing>(mut m: Vec<Vec<T>>) -> Result<T> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Structure(String::from("empty matrix")));
    }
    let one = m[0][0].one_like();
    let mut negate = false;
    let mut prev_pivot = one;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(m[0][0].zero_like()),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&pivot).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev_pivot).ok_or_else(|| {
                    Error::Invariant(format!(
                        "Bareiss division failed at pivot {k}"
                    ))
                })?;
            }
            m[i][k] = m[i][k].zero_like();
        }
        prev_pivot = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate {
        det.zero_like().sub(&det)
    } else {
        det
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::exactnum::rng::SplitMix64;
    use crate::multipoly::Shape;

    fn ipoly(coeffs: &[i64]) -> Vec<BigInt> {
        coeffs.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn monic_linear_cofactor_is_evaluation() {
        // Res(t^2 - 2, t - 3) = f(3) = 7
        let f = ipoly(&[-2, 0, 1]);
        let g = ipoly(&[-3, 1]);
        assert_eq!(sylvester_resultant(&f, &g).unwrap(), int(7));
    }

    #[test]
    fn two_linear_rows_fixed_sign() {
        // with f-rows first: Res(t - a, t - b) = g(a) = a - b
        let f = ipoly(&[-5, 1]);
        let g = ipoly(&[-11, 1]);
        assert_eq!(sylvester_resultant(&f, &g).unwrap(), int(5) - int(11));
    }

    #[test]
    fn u_resultant_of_sqrt2_points() {
        // Res_t(t^2 - 2, u0 + u1 t + u2 t^2) = (u0 + 2 u2)^2 - 2 u1^2
        let shape = Shape::new(0, 2);
        let upoly = |var: usize| {
            let mut rows = [0u32; 3];
            rows[var] = 1;
            MHPoly::monomial(shape, int(1), &[&rows]).unwrap()
        };
        let const_poly = |v: i64| MHPoly::monomial(shape, int(v), &[&[0, 0, 0]]).unwrap();
        let f = alloc::vec![const_poly(-2), const_poly(0), const_poly(1)];
        let g = alloc::vec![upoly(0), upoly(1), upoly(2)];
        let res = sylvester_resultant(&f, &g).unwrap();
        // product over roots ±sqrt(2): (u0 + sqrt2 u1 + 2 u2)(u0 - sqrt2 u1 + 2 u2)
        let want = MHPoly::zero(shape)
            .with_term(int(1), &[&[2, 0, 0]])
            .unwrap()
            .with_term(int(4), &[&[1, 0, 1]])
            .unwrap()
            .with_term(int(4), &[&[0, 0, 2]])
            .unwrap()
            .with_term(int(-2), &[&[0, 2, 0]])
            .unwrap();
        assert_eq!(res, want);
    }

    #[test]
    fn degree_zero_inputs_are_rejected() {
        let f = ipoly(&[3]);
        let g = ipoly(&[-3, 1]);
        assert!(sylvester_resultant(&f, &g).is_err());
        assert!(sylvester_resultant(&g, &f).is_err());
        assert!(sylvester_resultant(&f, &f).is_err());
    }

    fn random_monic(rng: &mut SplitMix64, deg: usize) -> Vec<BigInt> {
        let mut c: Vec<BigInt> = (0..deg).map(|_| int(rng.signed(4))).collect();
        c.push(int(1));
        c
    }

    #[test]
    fn swap_symmetry_and_multiplicativity() {
        let mut rng = SplitMix64::new(0xbead);
        for _ in 0..60 {
            let df = 1 + rng.below(3) as usize;
            let dg = 1 + rng.below(3) as usize;
            let dh = 1 + rng.below(2) as usize;
            let f = random_monic(&mut rng, df);
            let g = random_monic(&mut rng, dg);
            let h = random_monic(&mut rng, dh);
            let rfg = sylvester_resultant(&f, &g).unwrap();
            let rgf = sylvester_resultant(&g, &f).unwrap();
            let sign = if (df * dg).is_multiple_of(2) { int(1) } else { int(-1) };
            assert_eq!(rfg, sign * rgf, "Res(f,g) = (-1)^(df dg) Res(g,f)");

            // Res(f, g h) = Res(f, g) Res(f, h)
            let mut gh = alloc::vec![int(0); g.len() + h.len() - 1];
            for (i, a) in g.iter().enumerate() {
                for (j, b) in h.iter().enumerate() {
                    gh[i + j] += a * b;
                }
            }
            let rf_gh = sylvester_resultant(&f, &gh).unwrap();
            let rfh = sylvester_resultant(&f, &h).unwrap();
            assert_eq!(rf_gh, &rfg * &rfh);
        }
    }
}
