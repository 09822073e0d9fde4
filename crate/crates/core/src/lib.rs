//! Singular points of `Spec(R(G) ⊗ Z[ξ])` for finite permutation groups `G`.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! * [`exactmath`]: integer and prime-field polynomials, finite fields and
//!   exact kernel dimensions.
//! * [`cyclotomic`]: `Φ_n`, arithmetic in `Z[ξ_n]`, primes above `p` and
//!   residue maps.
//! * [`groups`]: permutation groups, conjugacy classes, `p`-regular fusion.
//! * [`chartable`]: Burnside–Dixon character tables and their JSON form.
//! * [`greenring`]: structure constants of the representation ring and its
//!   multiplication-table presentation.
//! * [`singular`]: points of the spectrum, Jacobians and tangent-space
//!   dimensions.

#![allow(clippy::needless_range_loop)]

pub mod chartable;
pub mod cyclotomic;
pub mod error;
pub mod exactmath;
pub mod greenring;
pub mod groups;
pub mod singular;

pub use error::{Error, Result};

/// Seed used for the randomized polynomial splitting when none is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;
