use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::randpot::{Perturbation, PotentialRealization};

/// Negative-eigenvalue count of decoupled Dirichlet wells of depth `w_k` and
/// length `L_k`: the sum of `floor(sqrt(w_k) L_k / pi)`.
pub fn decoupled_count(weights: &[(f64, f64)]) -> Result<usize> {
    let mut total = 0usize;
    for &(w, len) in weights {
        if !(w.is_finite() && len.is_finite()) || w < 0.0 || len < 0.0 {
            return Err(Error::InvalidParameter(format!("decoupled well needs w, L >= 0, got ({w}, {len})")));
        }
        total += (w.sqrt() * len / PI).floor() as usize;
    }
    Ok(total)
}

/// `(W(midpoint), length)` for every gap of `real` inside `[0, X]`, clipped
/// at `X`.
pub fn decoupled_weights(real: &PotentialRealization, w: &Perturbation) -> Vec<(f64, f64)> {
    let l = real.half_width();
    let x_max = real.domain();
    let mut start = 0.0;
    let mut out = Vec::with_capacity(real.centers().len());
    for &c in real.centers() {
        if start >= x_max {
            break;
        }
        let end = (c - l).min(x_max);
        if end > start {
            out.push((w.eval(0.5 * (start + end)), end - start));
        }
        start = c + l;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randpot::build_realization;

    #[test]
    fn integer_ratios() {
        let w = PI * PI;
        assert_eq!(decoupled_count(&[(w, 1.0), (w, 2.0), (w, 3.0)]).unwrap(), 6);
    }

    #[test]
    fn shallow_wells_hold_nothing() {
        let lens = [0.5, 3.0, 7.0];
        let w = (PI / 7.0).powi(2) * 0.999;
        let pairs: Vec<_> = lens.iter().map(|&l| (w, l)).collect();
        assert_eq!(decoupled_count(&pairs).unwrap(), 0);
    }

    #[test]
    fn rejects_negative() {
        assert!(decoupled_count(&[(-1.0, 1.0)]).is_err());
        assert!(decoupled_count(&[(1.0, -1.0)]).is_err());
        assert!(decoupled_count(&[(f64::NAN, 1.0)]).is_err());
    }

    #[test]
    fn weights_follow_gaps() {
        let r = build_realization(&[2.0, 0.0, 3.0, 4.0], 0.5, 1.0, 9.0).unwrap();
        let w = Perturbation::constant(1.0).unwrap();
        let pairs = decoupled_weights(&r, &w);
        let lens: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        assert_eq!(lens, vec![2.0, 3.0, 1.0]);
    }
}
