use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::randpot::{GapDistribution, Perturbation};

/// Shape of a borderline perturbation family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawForm {
    /// `C / ln^s(x + e)`.
    LogPower,
    /// `C (x + 1)^(-s)`.
    PowerLaw,
}

impl fmt::Display for LawForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::LogPower => "log-power",
            Self::PowerLaw => "power-law",
        })
    }
}

/// Critical decay of `W` for a gap law: perturbations below it leave finitely
/// many negative eigenvalues almost surely, those above infinitely many.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderlineLaw {
    pub dist: GapDistribution,
    pub constant: f64,
    pub exponent: f64,
    pub form: LawForm,
    /// Competing exponent for power-law tails, `2 / (alpha - 1)`.
    pub alternative_exponent: Option<f64>,
}

impl BorderlineLaw {
    /// The family member with constant `multiplier * constant`.
    pub fn perturbation(&self, multiplier: f64) -> Result<Perturbation> {
        let c = multiplier * self.constant;
        match self.form {
            LawForm::LogPower => Perturbation::log_power(c, self.exponent),
            LawForm::PowerLaw => Perturbation::power_law(c, self.exponent),
        }
    }
}

/// Borderline law of `dist`.
///
/// For a tail `exp(-eta x^a / a)` the critical family is
/// `(eta / a)^(2/a) pi^2 / ln^(2/a) x`; lattice gaps with `P(L >= m) = q^m`
/// behave like `eta = ln(1/q)`. For a Pareto tail only the exponent `2/alpha`
/// of `k^(-2/alpha)` is critical and the constant is set to 1.
pub fn borderline(dist: &GapDistribution) -> Result<BorderlineLaw> {
    dist.validate()?;
    let pi2 = PI * PI;
    let (constant, exponent, form, alternative_exponent) = match *dist {
        GapDistribution::Exponential { rate } => (rate * rate * pi2, 2.0, LawForm::LogPower, None),
        GapDistribution::StretchedExponential { rate, shape } => {
            ((rate / shape).powf(2.0 / shape) * pi2, 2.0 / shape, LawForm::LogPower, None)
        }
        GapDistribution::Geometric { q } => {
            let eta = (1.0 / q).ln();
            (eta * eta * pi2, 2.0, LawForm::LogPower, None)
        }
        GapDistribution::Pareto { exponent, .. } => {
            (1.0, 2.0 / exponent, LawForm::PowerLaw, Some(2.0 / (exponent - 1.0)))
        }
    };
    Ok(BorderlineLaw { dist: *dist, constant, exponent, form, alternative_exponent })
}

/// Which envelope of `W` along the bump positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `w+_k = W((1 - eps) alpha k)`.
    Plus,
    /// `w-_k = W((1 + eps) alpha k)`.
    Minus,
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Self::Plus),
            "-" | "minus" => Ok(Self::Minus),
            _ => Err(Error::InvalidParameter(format!("unknown side `{s}`"))),
        }
    }
}

/// `W` sampled at the perturbed bump positions `(1 -/+ eps) alpha k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxWeights {
    pub epsilon: f64,
    pub alpha_mean: f64,
    pub side: Side,
    /// `values[k - 1]` for `k = 1..=K`.
    pub values: Vec<f64>,
}

pub(crate) fn check_weights_args(alpha_mean: f64, epsilon: f64) -> Result<()> {
    if !(alpha_mean.is_finite() && alpha_mean > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha_mean must be > 0, got {alpha_mean}")));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in [0, 1), got {epsilon}")));
    }
    Ok(())
}

pub(crate) fn position(k: usize, alpha_mean: f64, epsilon: f64, side: Side) -> f64 {
    let f = match side {
        Side::Plus => 1.0 - epsilon,
        Side::Minus => 1.0 + epsilon,
    };
    f * alpha_mean * k as f64
}

/// The sequence `w+-_k` for `k = 1..=k_max`.
pub fn approx_weights(
    w: &Perturbation,
    alpha_mean: f64,
    epsilon: f64,
    k_max: usize,
    side: Side,
) -> Result<ApproxWeights> {
    w.validate()?;
    check_weights_args(alpha_mean, epsilon)?;
    let values = (1..=k_max).map(|k| w.eval(position(k, alpha_mean, epsilon, side))).collect();
    Ok(ApproxWeights { epsilon, alpha_mean, side, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_constants() {
        let b = borderline(&GapDistribution::exponential(2.0).unwrap()).unwrap();
        assert_relative_eq!(b.constant, 4.0 * PI * PI, epsilon = 1e-12);
        assert_relative_eq!(b.constant, 39.4784176, epsilon = 1e-6);
        assert_eq!((b.exponent, b.form), (2.0, LawForm::LogPower));
        let one = borderline(&GapDistribution::exponential(1.0).unwrap()).unwrap();
        assert_relative_eq!(b.constant, 4.0 * one.constant, epsilon = 1e-12);
    }

    #[test]
    fn stretched_reduces_to_exponential() {
        let s = borderline(&GapDistribution::stretched_exponential(1.0, 1.0).unwrap()).unwrap();
        assert_relative_eq!(s.constant, PI * PI, epsilon = 1e-12);
        assert_eq!(s.exponent, 2.0);
        let s = borderline(&GapDistribution::stretched_exponential(2.0, 0.5).unwrap()).unwrap();
        assert_relative_eq!(s.constant, 256.0 * PI * PI, epsilon = 1e-9);
        assert_eq!(s.exponent, 4.0);
    }

    #[test]
    fn geometric_constant() {
        let g = borderline(&GapDistribution::geometric(0.5).unwrap()).unwrap();
        assert_relative_eq!(g.constant, 4.741881, epsilon = 1e-6);
    }

    #[test]
    fn pareto_exponents() {
        let p = borderline(&GapDistribution::pareto(1.0, 3.0).unwrap()).unwrap();
        assert_relative_eq!(p.exponent, 2.0 / 3.0);
        assert_eq!(p.alternative_exponent, Some(1.0));
        assert_eq!(p.perturbation(2.0).unwrap(), Perturbation::power_law(2.0, 2.0 / 3.0).unwrap());
    }

    #[test]
    fn weights_sides() {
        let w = Perturbation::log_power(3.0, 2.0).unwrap();
        let p = approx_weights(&w, 2.0, 0.0, 50, Side::Plus).unwrap();
        let m = approx_weights(&w, 2.0, 0.0, 50, Side::Minus).unwrap();
        assert_eq!(p.values, m.values);
        assert_eq!(p.values[9], w.eval(20.0));
        let p = approx_weights(&w, 2.0, 0.3, 50, Side::Plus).unwrap();
        let m = approx_weights(&w, 2.0, 0.3, 50, Side::Minus).unwrap();
        assert!(p.values.iter().zip(&m.values).all(|(a, b)| b <= a));
        assert!(approx_weights(&w, 2.0, 1.0, 5, Side::Plus).is_err());
        assert!(approx_weights(&w, 0.0, 0.1, 5, Side::Plus).is_err());
    }

    #[test]
    fn log_power_envelopes_merge() {
        let w = Perturbation::log_power(1.0, 2.0).unwrap();
        let ratio = |k: usize| {
            let p = w.eval(position(k, 1.5, 0.05, Side::Plus));
            let m = w.eval(position(k, 1.5, 0.05, Side::Minus));
            p / m
        };
        assert!(ratio(1_000_000) < ratio(1000));
        assert!(ratio(1_000_000) - 1.0 < 0.02);
    }
}
