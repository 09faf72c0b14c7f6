//! Exact-arithmetic kernels for locating the primes modulo which a plane
//! projective curve decomposes into components of prescribed degrees.
//!
//! Everything here is computed over the integers or over explicitly
//! constructed finite fields; no floating point enters any algebraic path.
//! Logarithms of exact rationals are carried by [`exactnum::Real`], a
//! fixed-point value with a tracked absolute error bound.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the scan
//! harness live in the companion `chowbez-cli` crate.
//!
//! Module map:
//!
//! * [`exactnum`] — big integers and rationals, primes, p-adic valuations,
//!   finite fields `F_{p^k}`, and high-precision logarithms.
//! * [`multipoly`] — sparse multihomogeneous polynomials over `Z` or `F_{p^k}`,
//!   the canonical monomial basis, and Sylvester resultants.
//! * [`combinat`] — the closed-form ranks, harmonic constants, and the
//!   assembled decomposability bound.
//! * [`heights`] — L2/L1 heights of projective points and forms.
//! * [`chowforms`] — Chow forms of plane curves and zero-cycles, the product
//!   map on coefficient vectors, and the specialization check.
//! * [`modfactor`] — univariate factorization over `F_p` and the search for
//!   decompositions of plane-curve fibers over extensions.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod chowforms;
pub mod combinat;
mod error;
pub mod exactnum;
pub mod heights;
pub mod modfactor;
pub mod multipoly;

pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
