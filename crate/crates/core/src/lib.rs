//! Exact verification engine for finite-dimensional Hopf algebras acting on
//! weight-truncated Heisenberg vertex operator algebras.
//!
//! Everything is computed over a cyclotomic field `Q(ζ_m)` with exact
//! arithmetic. Results that would need weights beyond the configured window
//! are reported as truncated rather than silently dropped.

// index loops mirror the index notation of the identities being checked
#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod error;
pub mod exactmath;
pub mod fixtures;
pub mod hopf;
pub mod report;
pub mod schema;
pub mod suite;
pub mod voa;
pub mod zhu;

pub use error::{Error, Result};
pub use exactmath::{Mat, Scalar};
