//! Computable heights of projective points and integer forms.
//!
//! Over the rationals the finite places of a height are carried entirely
//! by the content of the coordinate vector, so every height here is
//! "normalize to a primitive vector, then take a log".

use crate::exactnum::{gcd, BigInt, BigRat, Real};
use crate::multipoly::MHPoly;
use crate::{Error, Result};
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

/// A point of projective space with primitive integer coordinates and a
/// positive first nonzero coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn new(coords: &[BigInt]) -> Result<ProjPoint> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::Domain(String::from(
                "the zero vector is not a projective point",
            )));
        }
        let mut content = BigInt::zero();
        for c in coords {
            content = gcd(&content, c);
        }
        if coords.iter().find(|c| !Zero::is_zero(*c)).unwrap().is_negative() {
            content = -content;
        }
        let coords = coords.iter().map(|c| c / &content).collect();
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

/// The L2 point height: `(1/2) log(sum a_i^2)` of the primitive vector.
/// The primitive normalization realizes the finite-places correction
/// exactly over the rationals.
pub fn point_height_hk(v: &[BigInt]) -> Result<Real> {
    let point = ProjPoint::new(v)?;
    let sum: BigInt = point.coords.iter().map(|c| c * c).sum();
    Ok(Real::ln_rat(&BigRat::from(sum)).mul_rational(&BigRat::new(1.into(), 2.into())))
}

/// The L1 point height: `log(sum |a_i|)` of the primitive vector.
pub fn point_height_hb(v: &[BigInt]) -> Result<Real> {
    let point = ProjPoint::new(v)?;
    let sum: BigInt = point.coords.iter().map(|c| c.abs()).sum();
    Ok(Real::ln_rat(&BigRat::from(sum)))
}

/// Squared L2 norm of an integer form: the sum of squared coefficients.
pub fn l2_norm_sq(f: &MHPoly<BigInt>) -> BigInt {
    f.terms().map(|(_, c)| c * c).sum()
}

/// The exact metric-comparison ratio `L2(fg)^2 / (L2(f)^2 L2(g)^2)`.
pub fn phi_ratio_exact(f: &MHPoly<BigInt>, g: &MHPoly<BigInt>) -> Result<BigRat> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain(String::from(
            "metric ratio of a zero form",
        )));
    }
    let prod = f.mul(g)?;
    let num = l2_norm_sq(&prod);
    let den = l2_norm_sq(f) * l2_norm_sq(g);
    Ok(BigRat::new(num, den))
}

/// [`phi_ratio_exact`] carried into a real.
pub fn phi_ratio(f: &MHPoly<BigInt>, g: &MHPoly<BigInt>) -> Result<Real> {
    Ok(Real::from_rational(&phi_ratio_exact(f, g)?))
}
