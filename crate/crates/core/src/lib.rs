//! Compactly supported cohomology of basic period domains, computed in the
//! Grothendieck group of `J(Q_p) × Γ` from Weyl group combinatorics.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice_roots`]: root data, Weyl group enumeration, dominance, dual bases;
//! - [`arithmetic_datum`]: Galois actions, slopes, inner forms and validation;
//! - [`cohomology_engine`]: Kostant representatives, orbits, `Ω_I`, `I_[w]`,
//!   spectral-sequence pages and the final summand list;
//! - [`rep_k_group`]: symbol arithmetic, Ext dimensions, the splitting check;
//! - [`config`], [`catalog`], [`report`], [`selftest`]: the configuration
//!   dialect, built-in scenarios, report rendering and the invariant suite.

pub mod arithmetic_datum;
pub mod catalog;
pub mod cohomology_engine;
pub mod config;
pub mod error;
pub mod lattice_roots;
pub mod par;
pub mod rational;
pub mod rep_k_group;
pub mod report;
pub mod selftest;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
