//! Exact arithmetic for the height reducing property of algebraic numbers.
//!
//! The crate covers integer polynomial arithmetic, certified complex root
//! isolation, factorization over Q, exact LLL reduction, multiplicative
//! dependence among conjugates, digit expansions in algebraic bases, and an
//! enumeration of reciprocal polynomials with all roots on the unit circle.

#![allow(clippy::needless_range_loop)]

pub mod ball;
pub mod cheb;
pub mod error;
pub mod factorize;
pub mod hrp;
pub mod intpoly;
pub mod lll;
pub mod mdep;
pub mod roots;
mod serde_big;
pub mod survey;

pub use error::{Error, Result};
pub use intpoly::{IntPoly, RatPoly, RatScalar};
