use super::piecewise::{Boundary, PiecewisePotential};
use crate::error::{Error, Result};

/// Negative eigenvalues of the three-point discretization of `-d²/dx² + q`
/// on `[0, length]`, counted by Sylvester inertia.
///
/// `n_mesh` interior nodes with step `length / (n_mesh + 1)`. A Neumann end
/// adds its boundary node with a mirrored ghost neighbour; that row is halved
/// to keep the matrix symmetric, which leaves the inertia of the pencil
/// unchanged.
pub fn fd_inertia_count<F>(q_eval: F, length: f64, n_mesh: usize, left: Boundary, right: Boundary) -> Result<usize>
where
    F: Fn(f64) -> f64,
{
    if n_mesh < 10 {
        return Err(Error::InvalidParameter(format!("n_mesh must be >= 10, got {n_mesh}")));
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidParameter(format!("length must be positive, got {length}")));
    }
    let step = length / (n_mesh as f64 + 1.0);
    let inv2 = 1.0 / (step * step);

    let first = usize::from(left == Boundary::Dirichlet);
    let last = n_mesh + usize::from(right == Boundary::Neumann);
    let mut diag = Vec::with_capacity(last - first + 1);
    let mut q_max: f64 = 0.0;
    for i in first..=last {
        let q = q_eval(i as f64 * step);
        if !q.is_finite() {
            return Err(Error::NonFinite(format!("q({}) = {q}", i as f64 * step)));
        }
        q_max = q_max.max(q.abs());
        let boundary_node = i == 0 || i == n_mesh + 1;
        diag.push(if boundary_node { 0.5 * (2.0 * inv2 + q) } else { 2.0 * inv2 + q });
    }

    match negative_pivots(&diag, -inv2, 0.0) {
        Some(n) => Ok(n),
        None => {
            // An exactly-zero pivot: shift the spectrum up slightly and retry once.
            let shift = 1e-12 * if q_max > 0.0 { q_max } else { inv2 };
            negative_pivots(&diag, -inv2, shift)
                .ok_or_else(|| Error::Factorization(format!("zero pivot persists after shift {shift:e}")))
        }
    }
}

/// Negative pivots of `T + shift I` for symmetric tridiagonal `T` with
/// constant off-diagonal; `None` on an exactly-zero pivot.
fn negative_pivots(diag: &[f64], off: f64, shift: f64) -> Option<usize> {
    let off2 = off * off;
    let mut count = 0;
    let mut d = 1.0;
    for (i, &a) in diag.iter().enumerate() {
        d = if i == 0 { a + shift } else { a + shift - off2 / d };
        if d == 0.0 {
            return None;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    Some(count)
}

/// [`fd_inertia_count`] for a piecewise potential, measured from its start.
pub fn fd_inertia_count_potential(
    q: &PiecewisePotential,
    n_mesh: usize,
    left: Boundary,
    right: Boundary,
) -> Result<usize> {
    let x0 = q.start();
    fd_inertia_count(|x| q.eval(x0 + x), q.length(), n_mesh, left, right)
}

/// Heuristic sup-norm distance between the discretized and continuum
/// operators near zero energy.
///
/// A breakpoint is resolved only up to one mesh step, which costs about
/// `jump * step` per piece boundary (doubled here), and the three-point
/// stencil underestimates `k^2` by `k^4 step^2 / 12` for `k^2 <= max|q|`.
pub fn fd_margin(q: &PiecewisePotential, n_mesh: usize) -> f64 {
    let step = q.length() / (n_mesh as f64 + 1.0);
    let max_jump = q.values().windows(2).fold(0.0f64, |m, w| m.max((w[1] - w[0]).abs()));
    let qmax = q.max_abs();
    2.0 * max_jump * step + qmax * qmax * step * step / 12.0
}
