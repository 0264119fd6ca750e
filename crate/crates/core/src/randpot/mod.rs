//! Random bump potentials.
//!
//! Gap lengths between consecutive bumps are i.i.d. draws from a
//! [`GapDistribution`]; a [`PotentialRealization`] places bumps of height `h`
//! and width `2l` at centers `x_k = L_1 + ... + L_k + (2k - 1) l` on the half
//! axis. [`Perturbation`] holds the deterministic decaying well `W(x)`.

mod dist;
mod perturbation;
mod realization;

pub use dist::{sample_gaps, GapDistribution, GapStream};
pub use perturbation::Perturbation;
pub use realization::{bernoulli_lattice, build_realization, sample_covering, BasePiece, PotentialRealization};
