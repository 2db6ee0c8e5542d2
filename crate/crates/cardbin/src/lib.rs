//! Online cardinality-constrained bin packing.
//!
//! Bins hold at most `k` items of total size at most 1. The crate provides:
//!
//! - the online algorithms First Fit, Harmonic, Thin-and-Fat, and a k=5
//!   refinement of First Fit, all over exact rationals ([`algorithms`]);
//! - adaptive adversaries and static worst-case input families with
//!   feasibility certificates ([`adversary`]);
//! - an exact branch-and-bound optimum for small instances ([`oracle`]);
//! - amortized weight-function verifiers for the First Fit competitive
//!   bounds ([`analysis`]).

pub mod algorithms;
pub mod adversary;
pub mod analysis;
pub mod error;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod sweep;

pub use error::{Error, Result};
pub use instance::{
    trivial_lower_bound, validate_packing, Bin, Certificate, Claim, Instance, Packing,
    ValidationReport,
};
pub use rational::{rat, Rational};
