//! Arithmetic core for studying how Selmer groups of rank-zero elliptic
//! curves over Q behave in cyclic degree-p extensions.
//!
//! Everything here is pure computation over integers and floats and builds
//! without `std`; IO, parallel scans and the command line live in the
//! companion `iwasawa` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod classify;
pub mod curve;
pub mod densities;
pub mod error;
pub mod extensions;
pub mod factor;
pub mod iwasawa;
pub mod local;
pub mod matsuno;

pub use curve::EllipticCurve;
pub use error::{Error, Result};
