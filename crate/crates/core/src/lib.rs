//! Random Kronig-Penney operators `-u'' + V u - W u` on the half axis.
//!
//! [`randpot`] samples bump potentials with i.i.d. gaps, [`spectral`] counts
//! negative eigenvalues on truncated domains, [`theory`] holds the closed-form
//! borderline laws and diagnostic sums, and [`montecarlo`] runs seeded
//! experiments across growing truncations.

pub mod error;
pub mod fmt;
pub mod montecarlo;
pub mod randpot;
pub mod rng;
pub mod spectral;
pub mod theory;

pub use error::{Error, Result};

/// Crate version, echoed into output headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
