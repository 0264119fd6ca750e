use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::{CountMode, ExperimentConfig, Model, MAX_GAPS};
use crate::error::Result;
use crate::fmt::sig12;
use crate::randpot::{bernoulli_lattice, sample_covering, PotentialRealization};
use crate::rng::trial_seed;
use crate::spectral::{bracket_counts_dn, count_realization_checkpoints, Boundary, CountCertificate};

/// Count at one truncation point.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckpointCount {
    pub x: f64,
    pub certificate: CountCertificate,
    /// Bumps with center in `[0, x]`.
    pub bumps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub index: usize,
    pub checkpoints: Vec<CheckpointCount>,
    /// Longest gap drawn for the trial.
    pub max_gap: f64,
}

impl TrialResult {
    /// Upper count at each checkpoint.
    pub fn counts(&self) -> Vec<usize> {
        self.checkpoints.iter().map(|c| c.certificate.n_hi).collect()
    }

    /// The count changed over the last checkpoint step.
    pub fn is_growing(&self) -> bool {
        let c = self.counts();
        c.len() >= 2 && c[c.len() - 1] != c[c.len() - 2]
    }
}

/// Draws the realization of one trial, covering the largest checkpoint.
pub fn sample_realization(cfg: &ExperimentConfig, seed: u64) -> Result<PotentialRealization> {
    let x_max = cfg.max_checkpoint();
    match &cfg.model {
        Model::Renewal { dist, half_width, height } => {
            sample_covering(dist, *half_width, *height, x_max, seed, MAX_GAPS)
        }
        Model::Bernoulli { p, height } => bernoulli_lattice(*p, *height, x_max, seed),
    }
}

/// Runs trial `index` of `cfg`; deterministic in `(cfg, index)`.
pub fn run_trial(cfg: &ExperimentConfig, index: usize) -> Result<TrialResult> {
    cfg.validate()?;
    let real = sample_realization(cfg, trial_seed(cfg.master_seed, index as u64))?;
    let certs = match cfg.mode {
        CountMode::WholeDomain => count_realization_checkpoints(
            &real,
            &cfg.perturbation,
            Boundary::Dirichlet,
            Boundary::Dirichlet,
            cfg.refine,
            &cfg.checkpoints,
        )?,
        CountMode::BracketDn => cfg
            .checkpoints
            .iter()
            .map(|&x| Ok(bracket_counts_dn(&real.truncated(x)?, &cfg.perturbation, cfg.refine)?.certificate()))
            .collect::<Result<Vec<_>>>()?,
    };
    let checkpoints = cfg
        .checkpoints
        .iter()
        .zip(certs)
        .map(|(&x, certificate)| CheckpointCount { x, certificate, bumps: real.bumps_up_to(x) })
        .collect();
    Ok(TrialResult { index, checkpoints, max_gap: real.max_gap() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckpointSummary {
    pub x: f64,
    pub mean: f64,
    pub median: f64,
    pub max: usize,
    /// Fraction of trials whose count grew over the step ending here.
    pub growing_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub trials: Vec<TrialResult>,
    pub summary: Vec<CheckpointSummary>,
    /// Fraction of trials growing over the last checkpoint step.
    pub growing_fraction: f64,
    /// `(mean_{j+1} - mean_j) / log10(X_{j+1} / X_j)` for each step.
    pub mean_increment_per_decade: Vec<f64>,
}

fn median(sorted: &[usize]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2]) as f64
    }
}

impl GrowthReport {
    /// Aggregates trial results; the order of `trials` does not matter.
    pub fn from_trials(mut trials: Vec<TrialResult>) -> Self {
        trials.sort_by_key(|t| t.index);
        let m = trials.first().map_or(0, |t| t.checkpoints.len());
        let n = trials.len() as f64;
        let summary: Vec<CheckpointSummary> = (0..m)
            .map(|j| {
                let mut c: Vec<usize> = trials.iter().map(|t| t.checkpoints[j].certificate.n_hi).collect();
                c.sort_unstable();
                let grew = if j == 0 {
                    0
                } else {
                    trials
                        .iter()
                        .filter(|t| t.checkpoints[j].certificate.n_hi != t.checkpoints[j - 1].certificate.n_hi)
                        .count()
                };
                CheckpointSummary {
                    x: trials[0].checkpoints[j].x,
                    mean: c.iter().sum::<usize>() as f64 / n,
                    median: median(&c),
                    max: *c.last().expect("at least one trial"),
                    growing_fraction: grew as f64 / n,
                }
            })
            .collect();
        let growing_fraction = trials.iter().filter(|t| t.is_growing()).count() as f64 / n;
        let mean_increment_per_decade =
            summary.windows(2).map(|w| (w[1].mean - w[0].mean) / (w[1].x / w[0].x).log10()).collect();
        Self { trials, summary, growing_fraction, mean_increment_per_decade }
    }

    pub const TRIALS_HEADER: &'static str = "trial,checkpoint_X,n_lo,n_hi,max_gap,k_count";
    pub const SUMMARY_HEADER: &'static str = "checkpoint_X,mean,median,max,growing_fraction";

    pub fn trials_csv(&self) -> String {
        let mut s = format!("{}\n", Self::TRIALS_HEADER);
        for t in &self.trials {
            for c in &t.checkpoints {
                writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    t.index,
                    sig12(c.x),
                    c.certificate.n_lo,
                    c.certificate.n_hi,
                    sig12(t.max_gap),
                    c.bumps
                )
                .expect("write to string");
            }
        }
        s
    }

    pub fn summary_csv(&self) -> String {
        let mut s = format!("{}\n", Self::SUMMARY_HEADER);
        for c in &self.summary {
            writeln!(s, "{},{},{},{},{}", sig12(c.x), sig12(c.mean), sig12(c.median), c.max, sig12(c.growing_fraction))
                .expect("write to string");
        }
        s
    }
}

/// Runs all trials in parallel and aggregates them.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<GrowthReport> {
    cfg.validate()?;
    let trials = (0..cfg.trials).into_par_iter().map(|i| run_trial(cfg, i)).collect::<Result<Vec<_>>>()?;
    Ok(GrowthReport::from_trials(trials))
}
