use std::fmt;

use crate::error::{Error, Result};
use crate::randpot::{GapDistribution, Perturbation};
use crate::spectral::RefinePolicy;

/// Gap draws allowed per trial before giving up on covering the domain.
pub const MAX_GAPS: usize = 10_000_000;

/// How realizations are drawn.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    /// i.i.d. gaps from `dist` between bumps of half width `half_width`.
    Renewal { dist: GapDistribution, half_width: f64, height: f64 },
    /// Unit cells occupied independently with probability `p`.
    Bernoulli { p: f64, height: f64 },
}

impl Model {
    pub fn height(&self) -> f64 {
        match *self {
            Self::Renewal { height, .. } | Self::Bernoulli { height, .. } => height,
        }
    }
}

/// What is counted at each checkpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// `[0, X]` with Dirichlet ends; certificate from the `W` envelopes.
    WholeDomain,
    /// Dirichlet/Neumann decoupling at bump centers; `n_lo = n_D`,
    /// `n_hi = n_N`.
    BracketDn,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::WholeDomain => "whole-domain",
            Self::BracketDn => "bracket-DN",
        })
    }
}

impl std::str::FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "whole" | "whole-domain" => Ok(Self::WholeDomain),
            "bracket" | "bracket-DN" | "dn" => Ok(Self::BracketDn),
            _ => Err(Error::InvalidParameter(format!("unknown count mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub model: Model,
    pub perturbation: Perturbation,
    /// Increasing truncation points `X_1 < ... < X_m`.
    pub checkpoints: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub mode: CountMode,
    pub refine: RefinePolicy,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        match &self.model {
            Model::Renewal { dist, half_width, height } => {
                dist.validate()?;
                if !(half_width.is_finite() && *half_width > 0.0) {
                    return Err(Error::InvalidParameter(format!("half width must be > 0, got {half_width}")));
                }
                check_height(*height)?;
            }
            Model::Bernoulli { p, height } => {
                if !(*p > 0.0 && *p < 1.0) {
                    return Err(Error::InvalidParameter(format!("p must lie in (0, 1), got {p}")));
                }
                check_height(*height)?;
            }
        }
        self.perturbation.validate()?;
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        let first_ok = self.checkpoints.first().is_some_and(|&x| x >= 1.0);
        if !first_ok
            || self.checkpoints.iter().any(|x| !x.is_finite())
            || self.checkpoints.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(Error::InvalidParameter(format!(
                "checkpoints must be finite, >= 1 and increasing, got {:?}",
                self.checkpoints
            )));
        }
        Ok(())
    }

    pub fn max_checkpoint(&self) -> f64 {
        *self.checkpoints.last().expect("validated checkpoints")
    }
}

fn check_height(h: f64) -> Result<()> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidParameter(format!("bump height must be finite and > 0, got {h}")));
    }
    Ok(())
}
