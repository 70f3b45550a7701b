//! Certified computation of root separation quantities for integer
//! polynomials: `sep(P)` (minimal distance between distinct roots),
//! `abssep(P)` (minimal nonzero distance between root moduli), the explicit
//! lower-bound formulas they satisfy, extremal polynomial families attaining
//! them, and an exhaustive record search over coefficient boxes.
//!
//! All reported enclosures are rigorous: exact integer/dyadic arithmetic
//! everywhere, with directed rounding at every inexact step.

pub mod bounds;
pub mod dyadic;
pub mod error;
pub mod exec;
pub mod families;
pub mod interval;
pub mod poly;
pub mod roots;
pub mod search;

pub use error::{Error, Result};
pub use poly::IntPolynomial;
