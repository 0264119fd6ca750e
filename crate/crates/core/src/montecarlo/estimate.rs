use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::randpot::{GapDistribution, GapStream};

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// Monte Carlo mean of `floor(sqrt(w) L / pi)` over i.i.d. gaps `L`.
pub fn estimate_expected_count(dist: &GapDistribution, w: f64, samples: usize, seed: u64) -> Result<Estimate> {
    dist.validate()?;
    if !(w.is_finite() && w >= 0.0) {
        return Err(Error::InvalidParameter(format!("w must be finite and >= 0, got {w}")));
    }
    if samples < 1000 {
        return Err(Error::InvalidParameter(format!("need at least 1000 samples, got {samples}")));
    }
    let scale = w.sqrt() / PI;
    let (mut sum, mut sum2) = (0.0, 0.0);
    for l in GapStream::new(*dist, seed).take(samples) {
        let n = (scale * l).floor();
        sum += n;
        sum2 += n * n;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum2 - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(Estimate { mean, stderr: (var / n).sqrt(), samples })
}
