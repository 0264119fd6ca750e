use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use super::borderline::{check_weights_args, position, Side};
use crate::error::{Error, Result};
use crate::fmt::sig12;
use crate::randpot::{GapDistribution, Perturbation};

/// Half-width of the undetermined band around decay exponent 1.
pub const VERDICT_MARGIN: f64 = 0.1;

/// Finite-`K` classification of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converging,
    Diverging,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Converging => "converging",
            Self::Diverging => "diverging",
            Self::Undetermined => "undetermined",
        })
    }
}

impl Verdict {
    /// Classifies a fitted decay `k^(-s)`.
    pub fn from_exponent(s: f64) -> Self {
        if s > 1.0 + VERDICT_MARGIN {
            Self::Converging
        } else if s < 1.0 - VERDICT_MARGIN {
            Self::Diverging
        } else {
            Self::Undetermined
        }
    }
}

/// Terms `P(L > pi / sqrt(w_k) - c)` and their partial sums.
#[derive(Debug, Clone, PartialEq)]
pub struct BcSum {
    pub summands: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// Decay exponent `s` of the summand over the last decade, if the
    /// summand is positive there.
    pub exponent: Option<f64>,
    pub verdict: Verdict,
}

impl BcSum {
    /// Rows `k,summand,partial_sum`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,summand,partial_sum\n");
        for (i, (a, p)) in self.summands.iter().zip(&self.partial_sums).enumerate() {
            writeln!(s, "{},{},{}", i + 1, sig12(*a), sig12(*p)).expect("write to string");
        }
        s
    }
}

const FIT_POINTS: usize = 64;

/// Least-squares slope of `-ln a_k` against `ln k` on `FIT_POINTS`
/// log-spaced indices of `[K/10, K]` (1-based). `None` if any sampled term is
/// not positive or fewer than two distinct indices exist.
pub fn fit_decay_exponent(terms: &[f64]) -> Option<f64> {
    let k_max = terms.len();
    let k_min = (k_max / 10).max(1);
    if k_max <= k_min {
        return None;
    }
    let ratio = (k_max as f64 / k_min as f64).ln();
    let mut ks: Vec<usize> = (0..FIT_POINTS)
        .map(|i| ((k_min as f64) * (ratio * i as f64 / (FIT_POINTS - 1) as f64).exp()).round() as usize)
        .map(|k| k.clamp(k_min, k_max))
        .collect();
    ks.dedup();
    let pts: Vec<(f64, f64)> =
        ks.iter().map(|&k| ((k as f64).ln(), terms[k - 1])).filter(|p| p.1 > 0.0).map(|(x, a)| (x, a.ln())).collect();
    if pts.len() < ks.len() || pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(-sxy / sxx)
}

/// Diagnostic series `sum_k P(L > max(0, pi / sqrt(w+-_k) - c))` up to
/// `k_max`, with a verdict read from the decay of its last decade.
///
/// A summand that has underflowed to zero at `k_max` counts as converging.
pub fn bc_sum(
    dist: &GapDistribution,
    w: &Perturbation,
    alpha_mean: f64,
    epsilon: f64,
    offset: f64,
    k_max: usize,
    side: Side,
) -> Result<BcSum> {
    dist.validate()?;
    w.validate()?;
    check_weights_args(alpha_mean, epsilon)?;
    if k_max == 0 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    if !(offset.is_finite() && offset >= 0.0) {
        return Err(Error::InvalidParameter(format!("offset must be >= 0, got {offset}")));
    }
    let mut summands = Vec::with_capacity(k_max);
    let mut partial_sums = Vec::with_capacity(k_max);
    let mut acc = 0.0;
    for k in 1..=k_max {
        let x = position(k, alpha_mean, epsilon, side);
        let wk = w.eval(x);
        if wk.is_nan() || wk <= 0.0 {
            return Err(Error::Domain(format!("W({x}) = {wk} is not positive")));
        }
        let a = dist.tail((PI / wk.sqrt() - offset).max(0.0))?;
        acc += a;
        summands.push(a);
        partial_sums.push(acc);
    }
    let exponent = fit_decay_exponent(&summands);
    let verdict = match exponent {
        Some(s) => Verdict::from_exponent(s),
        None if summands[k_max - 1] == 0.0 => Verdict::Converging,
        None => Verdict::Undetermined,
    };
    Ok(BcSum { summands, partial_sums, exponent, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn exp1() -> GapDistribution {
        GapDistribution::exponential(1.0).unwrap()
    }

    #[test]
    fn constant_w_diverges_linearly() {
        let w = Perturbation::constant(2.0).unwrap();
        let r = bc_sum(&exp1(), &w, 2.0, 0.05, 0.0, 1000, Side::Plus).unwrap();
        let a = (-PI / 2f64.sqrt()).exp();
        assert!(r.summands.iter().all(|&s| (s - a).abs() < 1e-15));
        assert_relative_eq!(r.partial_sums[999], 1000.0 * a, max_relative = 1e-12);
        assert_eq!(r.verdict, Verdict::Diverging);
        assert_relative_eq!(r.exponent.unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn log_power_below_and_above() {
        let c0 = PI * PI;
        let below = Perturbation::log_power(0.25 * c0, 2.0).unwrap();
        let above = Perturbation::log_power(4.0 * c0, 2.0).unwrap();
        let r = bc_sum(&exp1(), &below, 2.0, 0.05, 0.0, 100_000, Side::Plus).unwrap();
        assert_eq!(r.verdict, Verdict::Converging);
        assert!((r.exponent.unwrap() - 2.0).abs() < 0.2);
        let r = bc_sum(&exp1(), &above, 2.0, 0.05, 0.0, 100_000, Side::Plus).unwrap();
        assert_eq!(r.verdict, Verdict::Diverging);
        assert!((r.exponent.unwrap() - 0.5).abs() < 0.1);
    }

    #[test]
    fn fit_recovers_power() {
        let terms: Vec<f64> = (1..=5000).map(|k| (k as f64).powf(-1.7)).collect();
        assert_relative_eq!(fit_decay_exponent(&terms).unwrap(), 1.7, epsilon = 1e-9);
        assert_eq!(fit_decay_exponent(&[1.0]), None);
    }

    #[test]
    fn underflow_counts_as_converging() {
        let w = Perturbation::power_law(1.0, 3.0).unwrap();
        let r = bc_sum(&exp1(), &w, 2.0, 0.0, 0.0, 200, Side::Minus).unwrap();
        assert_eq!(r.summands[199], 0.0);
        assert_eq!(r.verdict, Verdict::Converging);
    }

    #[test]
    fn invalid_inputs() {
        let w = Perturbation::constant(0.0).unwrap();
        assert!(matches!(bc_sum(&exp1(), &w, 2.0, 0.05, 0.0, 10, Side::Plus), Err(Error::Domain(_))));
        let w = Perturbation::constant(1.0).unwrap();
        assert!(bc_sum(&exp1(), &w, 2.0, 0.05, -1.0, 10, Side::Plus).is_err());
        assert!(bc_sum(&exp1(), &w, 2.0, 0.05, 0.0, 0, Side::Plus).is_err());
    }

    #[test]
    fn csv_layout() {
        let w = Perturbation::constant(1.0).unwrap();
        let csv = bc_sum(&exp1(), &w, 2.0, 0.05, 0.0, 3, Side::Plus).unwrap().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "k,summand,partial_sum");
        assert_eq!(lines.len(), 4);
        assert!(lines[3].starts_with("3,"));
    }
}
