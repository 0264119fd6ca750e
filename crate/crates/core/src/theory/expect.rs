use std::f64::consts::PI;
use std::fmt::Write as _;

use super::quad::integrate_to_infinity;
use crate::error::{Error, Result};
use crate::fmt::sig12;
use crate::randpot::GapDistribution;

const REL_TOL: f64 = 1e-10;

/// `integral_a^inf P(L > x) dx` for `a >= 0`.
pub fn tail_integral(dist: &GapDistribution, a: f64) -> Result<f64> {
    dist.validate()?;
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::Domain(format!("lower limit must be finite and >= 0, got {a}")));
    }
    Ok(match *dist {
        GapDistribution::Exponential { rate } => (-rate * a).exp() / rate,
        GapDistribution::Pareto { scale, exponent } => {
            if a >= scale {
                scale.powf(exponent) * a.powf(1.0 - exponent) / (exponent - 1.0)
            } else {
                scale - a + scale / (exponent - 1.0)
            }
        }
        GapDistribution::Geometric { q } => {
            let m = a.ceil();
            (m - a) * q.powf(m) + q.powf(m + 1.0) / (1.0 - q)
        }
        GapDistribution::StretchedExponential { rate, shape } => {
            integrate_to_infinity(|x| (-rate * x.powf(shape) / shape).exp(), a, REL_TOL)?
        }
    })
}

/// Bounds on the expected number of negative eigenvalues of one hard-wall
/// well of depth `w` and random length `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectationBounds {
    pub w: f64,
    pub lower: f64,
    pub upper: f64,
}

impl ExpectationBounds {
    pub const CSV_HEADER: &'static str = "w,lower,upper";

    pub fn csv_row(&self) -> String {
        let mut s = String::new();
        write!(s, "{},{},{}", sig12(self.w), sig12(self.lower), sig12(self.upper)).expect("write to string");
        s
    }
}

/// `sqrt(w)/pi * I` and `sqrt(w)/pi * I + P(L > pi/sqrt(w))` with
/// `I = integral_{pi/sqrt(w)}^inf P(L > x) dx`.
pub fn expectation_bounds(dist: &GapDistribution, w: f64) -> Result<ExpectationBounds> {
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::InvalidParameter(format!("w must be finite and > 0, got {w}")));
    }
    let a = PI / w.sqrt();
    let lower = w.sqrt() / PI * tail_integral(dist, a)?;
    Ok(ExpectationBounds { w, lower, upper: lower + dist.tail(a)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use statrs::function::gamma::{gamma, gamma_ur};

    #[test]
    fn exponential_closed_form() {
        let d = GapDistribution::exponential(1.0).unwrap();
        for w in [0.5, 1.0, 2.0, 7.0] {
            let b = expectation_bounds(&d, w).unwrap();
            let e = (-PI / w.sqrt()).exp();
            assert_relative_eq!(b.lower, w.sqrt() / PI * e, max_relative = 1e-14);
            assert_relative_eq!(b.upper, (w.sqrt() / PI + 1.0) * e, max_relative = 1e-14);
        }
        let d = GapDistribution::exponential(2.5).unwrap();
        let b = expectation_bounds(&d, 3.0).unwrap();
        assert_relative_eq!(b.lower, 3f64.sqrt() / (2.5 * PI) * (-2.5 * PI / 3f64.sqrt()).exp(), max_relative = 1e-14);
    }

    #[test]
    fn pareto_hand_value() {
        let d = GapDistribution::pareto(1.0, 3.0).unwrap();
        let b = expectation_bounds(&d, 1.0).unwrap();
        assert_relative_eq!(b.lower, 1.0 / (2.0 * PI.powi(3)), max_relative = 1e-14);
        assert_relative_eq!(b.lower, 0.0161, epsilon = 1e-4);
        let q = integrate_to_infinity(|x| x.powi(-3), PI, 1e-12).unwrap() / PI;
        assert_relative_eq!(b.lower, q, max_relative = 1e-10);
        // Below the scale the tail is 1 up to x_m.
        let d = GapDistribution::pareto(10.0, 3.0).unwrap();
        let q = 10.0 - PI + integrate_to_infinity(|x| (10.0 / x).powi(3), 10.0, 1e-12).unwrap();
        assert_relative_eq!(tail_integral(&d, PI).unwrap(), q, max_relative = 1e-10);
    }

    #[test]
    fn stretched_matches_incomplete_gamma() {
        for (eta, alpha, a) in [(1.0f64, 0.5f64, 3.0f64), (2.0, 1.5, 0.7), (0.7, 2.0, 2.0), (1.0, 1.0, 4.0)] {
            let d = GapDistribution::stretched_exponential(eta, alpha).unwrap();
            let s = 1.0 / alpha;
            let oracle = (alpha / eta).powf(s) / alpha * gamma(s) * gamma_ur(s, eta * a.powf(alpha) / alpha);
            assert_relative_eq!(tail_integral(&d, a).unwrap(), oracle, max_relative = 1e-9);
        }
    }

    #[test]
    fn geometric_sum() {
        let d = GapDistribution::geometric(0.6).unwrap();
        for a in [0.0, 0.3, 1.0, 2.5, 7.0] {
            let oracle: f64 = (0..2000)
                .map(|j| {
                    let lo = (j as f64).max(a);
                    let hi = (j + 1) as f64;
                    if hi > lo {
                        (hi - lo) * 0.6f64.powi(j + 1)
                    } else {
                        0.0
                    }
                })
                .sum();
            assert_relative_eq!(tail_integral(&d, a).unwrap(), oracle, max_relative = 1e-12);
        }
        assert_relative_eq!(tail_integral(&d, 0.0).unwrap(), d.mean(), max_relative = 1e-12);
    }

    #[test]
    fn bounds_ordered_and_monotone() {
        let dists = [
            GapDistribution::exponential(1.0).unwrap(),
            GapDistribution::stretched_exponential(1.0, 0.5).unwrap(),
            GapDistribution::pareto(1.0, 2.5).unwrap(),
            GapDistribution::geometric(0.5).unwrap(),
        ];
        for d in &dists {
            let mut prev = (0.0, 0.0);
            for i in 1..=60 {
                let w = 0.05 * i as f64 * i as f64;
                let b = expectation_bounds(d, w).unwrap();
                assert!(b.lower <= b.upper);
                assert!(b.lower >= prev.0 && b.upper >= prev.1 - 1e-15, "{d:?} {w}");
                prev = (b.lower, b.upper);
            }
        }
        let d = GapDistribution::exponential(1.0).unwrap();
        assert!(expectation_bounds(&d, 1e6).unwrap().lower > 300.0);
        assert!(expectation_bounds(&d, 0.0).is_err());
    }

    #[test]
    fn csv_row_layout() {
        let b = ExpectationBounds { w: 1.0, lower: 0.5, upper: 0.75 };
        assert_eq!(b.csv_row(), "1,0.5,0.75");
    }
}
