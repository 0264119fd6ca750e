//! Counting negative eigenvalues of `-u'' + q u` on finite intervals.
//!
//! The primary counter propagates the zero-energy solution across a
//! piecewise-constant `q` in closed form and reads the count off its Prüfer
//! phase (Sturm oscillation). A finite-difference inertia count serves as an
//! independent check, and a monotone `W` is handled by sandwiching it between
//! two piecewise-constant envelopes.

mod bracket;
mod decoupled;
mod fd;
mod piecewise;
mod prufer;
mod well;

pub use bracket::{
    bracket_counts_dn, count_realization_checkpoints, count_with_bracketed_w, DnCounts, IntervalCounts, RefinePolicy,
};
pub use decoupled::{decoupled_count, decoupled_weights};
pub use fd::{fd_inertia_count, fd_inertia_count_potential, fd_margin};
pub use piecewise::{Boundary, CountCertificate, Method, PiecewisePotential};
pub use prufer::{count_negative_exact, count_with_margin, PhaseSweep};
pub use well::{asymptotic_offset, matching_residual, well_ground_asymptotic, well_ground_state, WellGeometry};
