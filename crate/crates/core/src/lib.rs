//! Prime geodesics on the modular surface `PSL(2,Z)\H`.
//!
//! The counting function `Psi(x)` is computed along two arithmetic routes that
//! share no code: class numbers of indefinite forms with Pell units
//! ([`arith`]), and the quadratic Dirichlet series `L(1, n^2 - 4)`
//! ([`lseries`]). [`geodesics`] assembles the counts, [`experiments`] runs the
//! smoothing, short-interval, mean-value and Kloosterman checks, and [`cli`]
//! wires everything to the `prime-geodesic` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod geodesics;
pub mod kloosterman;
pub mod lseries;
pub mod parallel;
pub mod quad;
pub mod special;

pub use error::{Error, Result};
