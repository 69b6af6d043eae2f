//! Exact-arithmetic toolkit for experiments on lines in the affine group.
//!
//! Everything here computes over arbitrary-precision rationals: points and
//! lines in the plane, non-vertical lines viewed as elements of the affine
//! group `x -> mx + c`, multiplicative energies of line sets, incidence
//! counts between point sets and line sets, and the projective maps used to
//! move between equivalent configurations. Counts are exact integers; the
//! only approximate quantities are the reported bound values, which are
//! evaluated in fixed-precision decimal, and fitted growth exponents.

pub mod affine;
pub mod codec;
pub mod decimal;
pub mod energy;
mod error;
pub mod expander;
pub mod family;
pub mod generate;
pub mod geometry;
pub mod incidence;
pub mod projective;
pub mod rational;

pub mod experiment;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
