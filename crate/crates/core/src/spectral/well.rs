use std::f64::consts::FRAC_PI_2;

use super::piecewise::Boundary;
use crate::error::{Error, Result};

/// Symmetric well `[-L, L]` flanked by bumps of height `h` on
/// `[-L - l, -L]` and `[L, L + l]`, with `bc` at `±(L + l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellGeometry {
    pub half_width: f64,
    pub wall_width: f64,
    pub height: f64,
    pub bc: Boundary,
}

impl WellGeometry {
    pub fn new(half_width: f64, wall_width: f64, height: f64, bc: Boundary) -> Result<Self> {
        let g = Self { half_width, wall_width, height, bc };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("L", self.half_width), ("l", self.wall_width), ("h", self.height)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("well needs finite {name} > 0, got {v}")));
            }
        }
        Ok(())
    }

    /// Logarithmic derivative `-u'/u` at the inner wall edge for the even
    /// solution of energy `k^2`, continued through `k^2 = h`.
    pub fn wall_response(&self, k: f64) -> f64 {
        let (h, l) = (self.height, self.wall_width);
        let d = h - k * k;
        if d > 0.0 {
            let s = d.sqrt();
            match self.bc {
                Boundary::Dirichlet => s / (s * l).tanh(),
                Boundary::Neumann => s * (s * l).tanh(),
            }
        } else if d == 0.0 {
            match self.bc {
                Boundary::Dirichlet => 1.0 / l,
                Boundary::Neumann => 0.0,
            }
        } else {
            let t = (-d).sqrt();
            match self.bc {
                Boundary::Dirichlet => t / (t * l).tan(),
                Boundary::Neumann => -t * (t * l).tan(),
            }
        }
    }
}

/// `k tan(kL) - RHS(k)` for the matching equation of the even ground state.
pub fn matching_residual(geom: &WellGeometry, k: f64) -> f64 {
    k * (k * geom.half_width).tan() - geom.wall_response(k)
}

/// Lowest eigenvalue `mu_0 = k_0^2` of the well, from the matching equation
/// `k tan(kL) = RHS(k)` on `0 < k < pi / (2L)`.
pub fn well_ground_state(geom: &WellGeometry) -> Result<f64> {
    geom.validate()?;
    let big_l = geom.half_width;
    // Multiplied through by cos(kL) so that the bracket holds no pole.
    let f = |k: f64| k * (k * big_l).sin() - geom.wall_response(k) * (k * big_l).cos();
    let top = FRAC_PI_2 / big_l;
    let (mut lo, mut hi) = (1e-9 * top, top * (1.0 - 1e-12));
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoSignChange { lo, hi });
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let k = 0.5 * (lo + hi);
    Ok(k * k)
}

/// Leading offset `B_0` in `sqrt(mu_0) = (pi / 2L)(1 - B_0 / L) + O(L^-3)`:
/// the reciprocal of the wall response at zero energy.
pub fn asymptotic_offset(height: f64, wall_width: f64, bc: Boundary) -> f64 {
    let s = height.sqrt();
    match bc {
        Boundary::Dirichlet => (s * wall_width).tanh() / s,
        Boundary::Neumann => 1.0 / (s * (s * wall_width).tanh()),
    }
}

/// Large-`L` approximation of [`well_ground_state`].
pub fn well_ground_asymptotic(geom: &WellGeometry) -> f64 {
    let big_l = geom.half_width;
    let b0 = asymptotic_offset(geom.height, geom.wall_width, geom.bc);
    let root = FRAC_PI_2 / big_l * (1.0 - b0 / big_l);
    root * root
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{count_negative_exact, PiecewisePotential};
    use approx::assert_relative_eq;

    fn geom(l_half: f64, l: f64, h: f64, bc: Boundary) -> WellGeometry {
        WellGeometry::new(l_half, l, h, bc).unwrap()
    }

    #[test]
    fn hard_wall_limit() {
        let mu = well_ground_state(&geom(1.0, 1.0, 1e8, Boundary::Dirichlet)).unwrap();
        assert_relative_eq!(mu, FRAC_PI_2 * FRAC_PI_2, max_relative = 1e-3);
    }

    #[test]
    fn neumann_below_dirichlet() {
        for (big_l, l, h) in [(1.0, 1.0, 1.0), (3.0, 0.5, 4.0), (10.0, 2.0, 0.3), (0.5, 0.1, 50.0)] {
            let d = well_ground_state(&geom(big_l, l, h, Boundary::Dirichlet)).unwrap();
            let n = well_ground_state(&geom(big_l, l, h, Boundary::Neumann)).unwrap();
            assert!(n < d, "{big_l} {l} {h}: {n} vs {d}");
        }
    }

    #[test]
    fn residual_at_root() {
        for bc in [Boundary::Dirichlet, Boundary::Neumann] {
            for (big_l, l, h) in
                [(1.0, 1.0, 1.0), (25.0, 1.0, 1.0), (200.0, 1.0, 1.0), (1.0, 1.0, 1e8), (0.3, 0.2, 0.5)]
            {
                let g = geom(big_l, l, h, bc);
                let k = well_ground_state(&g).unwrap().sqrt();
                let rhs = g.wall_response(k);
                assert!(matching_residual(&g, k).abs() <= 1e-9 * (1.0 + rhs.abs()), "{g:?}");
            }
        }
    }

    #[test]
    fn offset_values() {
        assert_relative_eq!(asymptotic_offset(1.0, 1.0, Boundary::Dirichlet), 1f64.tanh(), epsilon = 1e-15);
        assert!(asymptotic_offset(1e16, 1.0, Boundary::Dirichlet) < 1e-7);
        assert_relative_eq!(asymptotic_offset(1.0, 1.0, Boundary::Neumann), 1.0 / 1f64.tanh(), epsilon = 1e-15);
    }

    #[test]
    fn asymptotic_close_at_large_l() {
        for bc in [Boundary::Dirichlet, Boundary::Neumann] {
            let g = geom(100.0, 1.0, 1.0, bc);
            let root = well_ground_state(&g).unwrap();
            assert_relative_eq!(well_ground_asymptotic(&g), root, max_relative = 1e-3);
        }
    }

    #[test]
    fn continuation_through_bump_height() {
        // Shallow wide well where sqrt(h) < pi / 2L, so k crosses sqrt(h)
        // inside the search bracket.
        let g = geom(0.5, 0.2, 0.5, Boundary::Dirichlet);
        let k = (0.5f64).sqrt();
        let below = g.wall_response(k * (1.0 - 1e-9));
        let above = g.wall_response(k * (1.0 + 1e-9));
        assert_relative_eq!(below, 1.0 / 0.2, max_relative = 1e-6);
        assert_relative_eq!(above, 1.0 / 0.2, max_relative = 1e-6);
        assert!(well_ground_state(&g).is_ok());
    }

    #[test]
    fn ground_state_is_the_zero_crossing_of_the_counter() {
        // The well operator has exactly one eigenvalue below mu_0 + d and
        // none below mu_0 - d.
        for bc in [Boundary::Dirichlet, Boundary::Neumann] {
            let g = geom(2.0, 0.7, 3.0, bc);
            let mu = well_ground_state(&g).unwrap();
            let count = |e: f64| {
                let q = PiecewisePotential::from_lengths(&[(0.7, 3.0 - e), (4.0, -e), (0.7, 3.0 - e)]).unwrap();
                count_negative_exact(&q, bc, bc).n_lo
            };
            assert_eq!(count(mu * (1.0 - 1e-9)), 0);
            assert_eq!(count(mu * (1.0 + 1e-9)), 1);
        }
    }

    #[test]
    fn invalid_geometry() {
        assert!(WellGeometry::new(0.0, 1.0, 1.0, Boundary::Dirichlet).is_err());
        assert!(WellGeometry::new(1.0, 1.0, f64::INFINITY, Boundary::Dirichlet).is_err());
    }
}
