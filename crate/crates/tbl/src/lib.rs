//! Twisted divisor sums, Bessel series and the identities that connect them.
//!
//! The crate is layered bottom-up: [`characters`] and [`specfun`] supply exact
//! character arithmetic and L-function values, [`bessel`] the Bessel kernels,
//! [`arith`] the twisted divisor sums, [`series`] the convergent evaluation of
//! every series shape, and [`identities`] assembles both sides of each identity
//! and reports the residual.

pub mod arith;
pub mod bessel;
pub mod characters;
pub mod error;
pub mod identities;
pub mod series;
pub mod specfun;

pub use error::{Error, Result};
