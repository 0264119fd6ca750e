use std::f64::consts::PI;

use super::piecewise::{Boundary, CountCertificate, Method, PiecewisePotential};
use crate::error::{Error, Result};

/// Zero-energy solution of `u'' = q u` carried across constant pieces.
///
/// The state is the number of zeros passed so far plus a unit vector
/// `(u, u')` with `u >= 0`, i.e. the Prüfer angle `theta` with
/// `u = r sin(theta)`, `u' = r cos(theta)` written as `turns * pi + phase`.
/// `theta` only crosses multiples of `pi` upwards, so counting zeros piece by
/// piece gives the winding exactly. A zero that lands on a breakpoint is
/// counted by the piece on its left.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSweep {
    turns: usize,
    u: f64,
    du: f64,
}

impl PhaseSweep {
    pub fn new(left: Boundary) -> Self {
        match left {
            Boundary::Dirichlet => Self { turns: 0, u: 0.0, du: 1.0 },
            Boundary::Neumann => Self { turns: 0, u: 1.0, du: 0.0 },
        }
    }

    /// Zeros of `u` passed so far, excluding the starting point.
    pub fn zeros(&self) -> usize {
        self.turns
    }

    /// Propagates across a piece of length `len` where `q` is constant.
    pub fn advance(&mut self, q: f64, len: f64) {
        if len <= 0.0 {
            return;
        }
        let (u0, du0) = (self.u, self.du);
        if q < 0.0 {
            // (u, u'/k) rotates rigidly by k * len.
            let k = (-q).sqrt();
            let psi = u0.atan2(du0 / k) + k * len;
            let mut n = (psi / PI).floor();
            let mut rem = psi - n * PI;
            if rem < 0.0 {
                rem = 0.0;
            } else if rem >= PI {
                n += 1.0;
                rem = 0.0;
            }
            self.turns += n as usize;
            self.set(rem.sin(), k * rem.cos());
            return;
        }
        let (u1, du1) = if q == 0.0 {
            (u0 + du0 * len, du0)
        } else {
            // cosh/sinh with the common factor exp(s)/2 removed.
            let kappa = q.sqrt();
            let e = (-2.0 * kappa * len).exp();
            (u0 * (1.0 + e) + du0 / kappa * (1.0 - e), u0 * kappa * (1.0 - e) + du0 * (1.0 + e))
        };
        // Without oscillation u has at most one zero on the piece.
        if u0 > 0.0 && u1 <= 0.0 {
            self.turns += 1;
        }
        if u1 < 0.0 || (u1 == 0.0 && du1 < 0.0) {
            self.set(-u1, -du1);
        } else {
            self.set(u1, du1);
        }
    }

    fn set(&mut self, u: f64, du: f64) {
        let r = u.hypot(du);
        self.u = u / r;
        self.du = du / r;
        if self.u == 0.0 && self.du < 0.0 {
            self.du = -self.du;
        }
    }

    /// Number of negative eigenvalues on the swept interval closed by `right`.
    pub fn count(&self, right: Boundary) -> usize {
        match right {
            // theta(X) = pi (n + 1) at the n-th Dirichlet eigenvalue.
            Boundary::Dirichlet => {
                if self.u > 0.0 {
                    self.turns
                } else {
                    self.turns.saturating_sub(1)
                }
            }
            // theta(X) = pi/2 + pi n at the n-th Neumann eigenvalue.
            Boundary::Neumann => self.turns + usize::from(self.du < 0.0),
        }
    }
}

/// Exact number of negative eigenvalues of `-u'' + q u` on the domain of `q`.
pub fn count_negative_exact(q: &PiecewisePotential, left: Boundary, right: Boundary) -> CountCertificate {
    let mut sweep = PhaseSweep::new(left);
    for (len, v) in q.pieces() {
        sweep.advance(v, len);
    }
    CountCertificate::exact(sweep.count(right), Method::PruferExact)
}

/// Counts for `q + margin` and `q - margin`: every operator within
/// `margin` of `q` in sup norm has its count in `[n_lo, n_hi]`.
pub fn count_with_margin(
    q: &PiecewisePotential,
    left: Boundary,
    right: Boundary,
    margin: f64,
) -> Result<CountCertificate> {
    if !(margin.is_finite() && margin >= 0.0) {
        return Err(Error::InvalidParameter(format!("margin must be finite and >= 0, got {margin}")));
    }
    let lo = count_negative_exact(&q.shifted(margin), left, right).n_lo;
    let hi = count_negative_exact(&q.shifted(-margin), left, right).n_lo;
    Ok(CountCertificate { n_lo: lo, n_hi: hi, per_interval: None, method: Method::PruferExact, flagged: false })
}
