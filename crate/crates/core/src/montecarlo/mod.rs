//! Seeded trials over growing truncations and their aggregation.
//!
//! Each trial draws one realization covering the largest checkpoint and
//! counts negative eigenvalues on every `[0, X_j]`. "Finitely many" is read
//! as saturation of the count over the last checkpoint step; this is a proxy
//! for an almost-sure statement that no finite `X` can decide.

mod config;
mod estimate;
mod run;

pub use config::{CountMode, ExperimentConfig, Model, MAX_GAPS};
pub use estimate::{estimate_expected_count, Estimate};
pub use run::{
    run_experiment, run_trial, sample_realization, CheckpointCount, CheckpointSummary, GrowthReport, TrialResult,
};
