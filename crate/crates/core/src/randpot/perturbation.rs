use std::f64::consts::E;

use crate::error::{Error, Result};

/// Nonnegative, nonincreasing perturbation `W(x)` subtracted from the
/// potential.
#[derive(Debug, Clone, PartialEq)]
pub enum Perturbation {
    /// `W(x) = amplitude / ln^power(x + e)`.
    LogPower { amplitude: f64, power: f64 },
    /// `W(x) = amplitude * (x + 1)^(-exponent)`.
    PowerLaw { amplitude: f64, exponent: f64 },
    /// `W(x) = w`. Only meaningful on finite intervals.
    Constant(f64),
    /// Piecewise-linear through `(x, W)` knots, flat outside the knot range.
    Tabulated(Vec<(f64, f64)>),
}

impl Perturbation {
    pub fn log_power(amplitude: f64, power: f64) -> Result<Self> {
        let p = Self::LogPower { amplitude, power };
        p.validate()?;
        Ok(p)
    }

    pub fn power_law(amplitude: f64, exponent: f64) -> Result<Self> {
        let p = Self::PowerLaw { amplitude, exponent };
        p.validate()?;
        Ok(p)
    }

    pub fn constant(w: f64) -> Result<Self> {
        let p = Self::Constant(w);
        p.validate()?;
        Ok(p)
    }

    /// Knots must have strictly increasing positions and nonincreasing,
    /// nonnegative values.
    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self> {
        let p = Self::Tabulated(knots);
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match self {
            Self::LogPower { amplitude, power } => {
                if !(amplitude.is_finite() && *amplitude >= 0.0 && power.is_finite() && *power > 0.0) {
                    return bad(format!("log-power needs amplitude >= 0, power > 0; got {amplitude}, {power}"));
                }
            }
            Self::PowerLaw { amplitude, exponent } => {
                if !(amplitude.is_finite() && *amplitude >= 0.0 && exponent.is_finite() && *exponent > 0.0) {
                    return bad(format!("power law needs amplitude >= 0, exponent > 0; got {amplitude}, {exponent}"));
                }
            }
            Self::Constant(w) => {
                if !(w.is_finite() && *w >= 0.0) {
                    return bad(format!("constant perturbation must be >= 0, got {w}"));
                }
            }
            Self::Tabulated(knots) => {
                if knots.is_empty() {
                    return bad("tabulated perturbation needs at least one knot".into());
                }
                for pair in knots.windows(2) {
                    let ((x0, w0), (x1, w1)) = (pair[0], pair[1]);
                    if x1 <= x0 || w1 > w0 {
                        return bad(format!(
                            "knots must increase in x and not increase in W: ({x0},{w0}) -> ({x1},{w1})"
                        ));
                    }
                }
                if knots.iter().any(|&(x, w)| !x.is_finite() || !w.is_finite() || w < 0.0) {
                    return bad("tabulated knots must be finite with W >= 0".into());
                }
            }
        }
        Ok(())
    }

    /// Value at `x >= 0`.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::LogPower { amplitude, power } => amplitude / (x + E).ln().powf(*power),
            Self::PowerLaw { amplitude, exponent } => amplitude * (x + 1.0).powf(-exponent),
            Self::Constant(w) => *w,
            Self::Tabulated(knots) => {
                let i = knots.partition_point(|&(kx, _)| kx <= x);
                if i == 0 {
                    knots[0].1
                } else if i == knots.len() {
                    knots[i - 1].1
                } else {
                    let ((x0, w0), (x1, w1)) = (knots[i - 1], knots[i]);
                    w0 + (w1 - w0) * (x - x0) / (x1 - x0)
                }
            }
        }
    }

    /// Same family with every value multiplied by `factor >= 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        match self {
            Self::LogPower { amplitude, power } => Self::LogPower { amplitude: amplitude * factor, power: *power },
            Self::PowerLaw { amplitude, exponent } => {
                Self::PowerLaw { amplitude: amplitude * factor, exponent: *exponent }
            }
            Self::Constant(w) => Self::Constant(w * factor),
            Self::Tabulated(knots) => Self::Tabulated(knots.iter().map(|&(x, w)| (x, w * factor)).collect()),
        }
    }

    /// True when `W` takes the same value everywhere.
    pub fn is_constant(&self) -> bool {
        match self {
            Self::Constant(_) => true,
            Self::LogPower { amplitude, .. } | Self::PowerLaw { amplitude, .. } => *amplitude == 0.0,
            Self::Tabulated(knots) => knots.iter().all(|k| k.1 == knots[0].1),
        }
    }
}
