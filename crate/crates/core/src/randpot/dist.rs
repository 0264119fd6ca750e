use rand::Rng;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::rng::{self, Stream};

/// Law of the gap length between consecutive bumps.
///
/// Each family is specified through its tail `F(x) = P(L > x)`, which is
/// known in closed form and inverted for sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GapDistribution {
    /// `F(x) = exp(-rate x)`.
    Exponential { rate: f64 },
    /// `F(x) = exp(-rate x^shape / shape)`.
    StretchedExponential { rate: f64, shape: f64 },
    /// `F(x) = min(1, (scale / x)^exponent)`, `exponent > 1`.
    Pareto { scale: f64, exponent: f64 },
    /// Integer gaps with `P(L >= m) = q^m`.
    ///
    /// [`GapDistribution::tail`] returns `q^ceil(x)`, which is `P(L >= x)`:
    /// it agrees with `P(L > x)` off the integers and with the lattice
    /// convention `P(L >= m) = q^m` on them.
    Geometric { q: f64 },
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
    }
}

impl GapDistribution {
    pub fn exponential(rate: f64) -> Result<Self> {
        Ok(Self::Exponential { rate: positive("rate", rate)? })
    }

    pub fn stretched_exponential(rate: f64, shape: f64) -> Result<Self> {
        Ok(Self::StretchedExponential { rate: positive("rate", rate)?, shape: positive("shape", shape)? })
    }

    /// Pareto law; the mean is finite only for `exponent > 1`.
    pub fn pareto(scale: f64, exponent: f64) -> Result<Self> {
        let scale = positive("scale", scale)?;
        if !(exponent.is_finite() && exponent > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "pareto exponent must exceed 1 for a finite mean, got {exponent}"
            )));
        }
        Ok(Self::Pareto { scale, exponent })
    }

    pub fn geometric(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!("geometric q must lie in (0, 1), got {q}")));
        }
        Ok(Self::Geometric { q })
    }

    /// Re-checks the parameter constraints of a value built as a literal.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Exponential { rate } => Self::exponential(rate).map(drop),
            Self::StretchedExponential { rate, shape } => Self::stretched_exponential(rate, shape).map(drop),
            Self::Pareto { scale, exponent } => Self::pareto(scale, exponent).map(drop),
            Self::Geometric { q } => Self::geometric(q).map(drop),
        }
    }

    /// Tail probability `P(L > x)` (see [`GapDistribution::Geometric`] for the
    /// lattice convention).
    pub fn tail(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain(format!("tail evaluated at negative length {x}")));
        }
        Ok(self.tail_nonneg(x))
    }

    pub(crate) fn tail_nonneg(&self, x: f64) -> f64 {
        match *self {
            Self::Exponential { rate } => (-rate * x).exp(),
            Self::StretchedExponential { rate, shape } => (-rate * x.powf(shape) / shape).exp(),
            Self::Pareto { scale, exponent } => {
                if x <= scale {
                    1.0
                } else {
                    (scale / x).powf(exponent)
                }
            }
            Self::Geometric { q } => q.powf(x.ceil()),
        }
    }

    /// `E[L]`.
    pub fn mean(&self) -> f64 {
        match *self {
            Self::Exponential { rate } => 1.0 / rate,
            Self::StretchedExponential { rate, shape } => (shape / rate).powf(1.0 / shape) * gamma(1.0 + 1.0 / shape),
            Self::Pareto { scale, exponent } => exponent * scale / (exponent - 1.0),
            Self::Geometric { q } => q / (1.0 - q),
        }
    }

    /// Exponential rate of the tail, `-lim ln F(x) / x`, where it exists.
    pub fn exponential_rate(&self) -> Option<f64> {
        match *self {
            Self::Exponential { rate } => Some(rate),
            Self::StretchedExponential { rate, shape: 1.0 } => Some(rate),
            Self::Geometric { q } => Some((1.0 / q).ln()),
            _ => None,
        }
    }

    /// Inverse of the tail applied to `u` in `(0, 1]`.
    fn invert_tail(&self, u: f64) -> f64 {
        match *self {
            Self::Exponential { rate } => -u.ln() / rate,
            Self::StretchedExponential { rate, shape } => (-shape * u.ln() / rate).powf(1.0 / shape),
            Self::Pareto { scale, exponent } => scale * u.powf(-1.0 / exponent),
            Self::Geometric { q } => (u.ln() / q.ln()).floor(),
        }
    }

    /// One draw by inverse CDF.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        // gen::<f64>() is uniform on [0, 1); flip it onto (0, 1].
        let u = 1.0 - rng.gen::<f64>();
        self.invert_tail(u)
    }
}

/// Endless gap sequence drawn from one seeded stream.
pub struct GapStream {
    dist: GapDistribution,
    rng: Stream,
}

impl GapStream {
    pub fn new(dist: GapDistribution, seed: u64) -> Self {
        Self { dist, rng: rng::stream(seed) }
    }
}

impl Iterator for GapStream {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(self.dist.sample(&mut self.rng))
    }
}

/// `n` i.i.d. gaps; equal `(dist, n, seed)` give bit-identical output.
pub fn sample_gaps(dist: &GapDistribution, n: usize, seed: u64) -> Result<Vec<f64>> {
    dist.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("sample_gaps needs n >= 1".into()));
    }
    Ok(GapStream::new(*dist, seed).take(n).collect())
}
