//! Exact computer algebra for the rational-solution hierarchy of Painlevé VI.
//!
//! The crate generates the tau-function polynomial families `T_n`, `S_n`
//! attached to terminating-hypergeometric seed solutions by running the
//! bilinear Toda recurrence in exact big-rational arithmetic, and verifies
//! the surrounding identities symbolically: Riccati and Painlevé VI
//! residuals, the Bäcklund transformation and its collapse, Hankel/Darboux
//! determinants, and the number-theoretic integrality experiments
//! (prime-indexed normalizing schedules, discriminant factorization,
//! integrality over `Z[r,s,t]`).
//!
//! Everything is exact: there is no floating point anywhere. A residual is
//! either the zero rational function or a concrete nonzero witness.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line front end live in the companion `pvi-tau-cli` crate.

#![cfg_attr(not(test), no_std)]
// Errors carry exact polynomial witnesses (e.g. the remainder of a division
// that was supposed to be exact), so the Err variants are naturally wide.
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod backlund;
pub mod conjecture;
pub mod error;
pub mod param;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod scalar;
pub mod seeds;
pub mod toda;
pub mod verify;

pub use error::Error;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{Integer, Rational};
pub use scalar::{FieldScalar, Scalar};
