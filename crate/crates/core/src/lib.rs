//! Exact-arithmetic laboratory for partition statistics and q-series.
//!
//! The crate is organised bottom-up:
//!
//! - [`rings`]: exact coefficient rings (integers, rationals, `Z/m`, cyclotomic rings).
//! - [`qseries`]: truncated Laurent q-series, bivariate `(w, q)` series, classical
//!   building blocks (eta products, Eisenstein series) and coefficient operators.
//! - [`partitions`]: brute-force enumeration oracles (ranks, cranks, marked Durfee symbols).
//! - [`moments`]: generating functions for rank/crank moments and the operator identities
//!   that connect them.
//! - [`congruence`]: congruence verification, the `l`-adic pipeline, dissections and
//!   root-of-unity identities.

pub mod congruence;
pub mod error;
pub mod linalg;
pub mod moments;
pub mod partitions;
pub mod qseries;
pub mod rings;

pub use error::{Error, Result};
