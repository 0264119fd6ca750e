use super::piecewise::{Boundary, CountCertificate, Method};
use super::prufer::PhaseSweep;
use crate::error::{Error, Result};
use crate::randpot::{BasePiece, Perturbation, PotentialRealization};

/// Sub-piece refinement for a monotone `W`.
///
/// Every constant piece of the realization is cut into `n` equal sub-pieces,
/// starting from `initial` and doubling until the bracket width is at most
/// `tolerance` or `n` reaches `max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefinePolicy {
    pub initial: usize,
    pub max: usize,
    pub tolerance: usize,
}

impl Default for RefinePolicy {
    fn default() -> Self {
        Self { initial: 4, max: 64, tolerance: 1 }
    }
}

impl RefinePolicy {
    /// Exactly `n` sub-pieces, no adaptivity.
    pub fn fixed(n: usize) -> Self {
        Self { initial: n, max: n, tolerance: usize::MAX }
    }

    fn validate(&self) -> Result<()> {
        if self.initial == 0 || self.max < self.initial {
            return Err(Error::InvalidParameter(format!(
                "refinement needs 1 <= initial <= max, got {} and {}",
                self.initial, self.max
            )));
        }
        Ok(())
    }

    /// Runs `eval(n)` for n = initial, 2 initial, ... until its reported
    /// width is within tolerance or the budget is spent.
    fn refine<T>(&self, constant_w: bool, mut eval: impl FnMut(usize) -> (T, usize)) -> (T, bool) {
        let mut n = if constant_w { 1 } else { self.initial };
        loop {
            let (out, width) = eval(n);
            if width <= self.tolerance || constant_w {
                return (out, false);
            }
            if n >= self.max {
                return (out, true);
            }
            n = (2 * n).min(self.max);
        }
    }
}

/// Propagates the envelopes `V - W(left end)` and `V - W(right end)` of
/// every sub-piece and records `(lo, hi)` counts at each stop, which must be
/// piece ends in increasing order.
fn sweep_envelopes(
    pieces: &[BasePiece],
    height: f64,
    w: &Perturbation,
    sub: usize,
    left: Boundary,
    right: Boundary,
    stops: &[f64],
) -> Vec<(usize, usize)> {
    let mut lower = PhaseSweep::new(left);
    let mut upper = PhaseSweep::new(left);
    let mut out = Vec::with_capacity(stops.len());
    let mut next_stop = stops.iter().peekable();
    for p in pieces {
        let v = if p.bump { height } else { 0.0 };
        let len = (p.end - p.start) / sub as f64;
        let mut w_left = w.eval(p.start);
        for i in 1..=sub {
            let b = if i == sub { p.end } else { p.start + len * i as f64 };
            let w_right = w.eval(b);
            // Larger W lowers q and can only add negative states.
            upper.advance(v - w_left, len);
            lower.advance(v - w_right, len);
            w_left = w_right;
        }
        while next_stop.peek().is_some_and(|&&s| s <= p.end) {
            next_stop.next();
            out.push((lower.count(right), upper.count(right)));
        }
    }
    out
}

fn check_inputs(real: &PotentialRealization, w: &Perturbation, policy: &RefinePolicy) -> Result<()> {
    w.validate()?;
    policy.validate()?;
    if !real.height().is_finite() {
        return Err(Error::NonFinite("infinite bump height; use the decoupled counter".into()));
    }
    Ok(())
}

/// Certified count for `-u'' + (V - W) u` on `[0, X]` with `bc` at both ends.
///
/// `n_lo` counts with `W` replaced on each sub-piece by its value at the
/// right end (a lower envelope), `n_hi` with its value at the left end.
pub fn count_with_bracketed_w(
    real: &PotentialRealization,
    w: &Perturbation,
    bc: Boundary,
    policy: RefinePolicy,
) -> Result<CountCertificate> {
    let mut certs = count_realization_checkpoints(real, w, bc, bc, policy, &[real.domain()])?;
    Ok(certs.pop().expect("one checkpoint"))
}

/// Certificates for the truncations `[0, X_j]` of one realization, obtained
/// in a single sweep. Each is identical to truncating first and calling
/// [`count_with_bracketed_w`] at the same refinement level.
pub fn count_realization_checkpoints(
    real: &PotentialRealization,
    w: &Perturbation,
    left: Boundary,
    right: Boundary,
    policy: RefinePolicy,
    checkpoints: &[f64],
) -> Result<Vec<CountCertificate>> {
    check_inputs(real, w, &policy)?;
    if checkpoints.is_empty()
        || checkpoints.windows(2).any(|c| c[1] <= c[0])
        || checkpoints[0] <= 0.0
        || *checkpoints.last().expect("nonempty") > real.domain()
    {
        return Err(Error::InvalidParameter(format!("checkpoints must increase within (0, {}]", real.domain())));
    }
    let pieces = real.base_pieces_split(checkpoints);
    let (counts, flagged) = policy.refine(w.is_constant(), |n| {
        let c = sweep_envelopes(&pieces, real.height(), w, n, left, right, checkpoints);
        let width = c.iter().map(|(lo, hi)| hi - lo).max().unwrap_or(0);
        (c, width)
    });
    Ok(counts
        .into_iter()
        .map(|(n_lo, n_hi)| CountCertificate { n_lo, n_hi, per_interval: None, method: Method::PruferExact, flagged })
        .collect())
}

/// Envelope counts on one bracketing interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalCounts {
    pub index: usize,
    pub start: f64,
    pub end: f64,
    /// `(lo, hi)` with Dirichlet conditions at both ends.
    pub dirichlet: (usize, usize),
    /// `(lo, hi)` with Neumann conditions at both ends.
    pub neumann: (usize, usize),
    pub flagged: bool,
}

/// Dirichlet-Neumann bracket built from the intervals `[0, x_1]`,
/// `[x_k, x_{k+1}]`, ..., `[x_n, X]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DnCounts {
    /// Sum of the lower Dirichlet counts.
    pub dirichlet: usize,
    /// Sum of the upper Neumann counts.
    pub neumann: usize,
    pub intervals: Vec<IntervalCounts>,
}

impl DnCounts {
    /// As a certificate tagged `bracket-DN`; per-interval entries carry the
    /// Dirichlet counts.
    pub fn certificate(&self) -> CountCertificate {
        CountCertificate {
            n_lo: self.dirichlet,
            n_hi: self.neumann,
            per_interval: Some(self.intervals.iter().map(|i| (i.index, i.dirichlet.0)).collect()),
            method: Method::BracketDn,
            flagged: self.intervals.iter().any(|i| i.flagged),
        }
    }
}

/// Decouples the realization at bump centers with Dirichlet or Neumann
/// conditions and sums the interval counts, taking the conservative end of
/// each envelope bracket.
pub fn bracket_counts_dn(real: &PotentialRealization, w: &Perturbation, policy: RefinePolicy) -> Result<DnCounts> {
    check_inputs(real, w, &policy)?;
    let pieces = real.base_pieces();
    let constant = w.is_constant();
    let mut intervals = Vec::new();
    for group in pieces.chunk_by(|a, b| a.interval == b.interval) {
        let run = |bc: Boundary| {
            policy.refine(constant, |n| {
                let c = sweep_envelopes(group, real.height(), w, n, bc, bc, &[group[group.len() - 1].end]);
                (c[0], c[0].1 - c[0].0)
            })
        };
        let (dirichlet, fd) = run(Boundary::Dirichlet);
        let (neumann, fn_) = run(Boundary::Neumann);
        intervals.push(IntervalCounts {
            index: group[0].interval,
            start: group[0].start,
            end: group[group.len() - 1].end,
            dirichlet,
            neumann,
            flagged: fd || fn_,
        });
    }
    Ok(DnCounts {
        dirichlet: intervals.iter().map(|i| i.dirichlet.0).sum(),
        neumann: intervals.iter().map(|i| i.neumann.1).sum(),
        intervals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randpot::{build_realization, sample_gaps, GapDistribution};
    use crate::spectral::{count_negative_exact, PiecewisePotential};

    fn sample(seed: u64, x: f64) -> PotentialRealization {
        let gaps = sample_gaps(&GapDistribution::exponential(1.0).unwrap(), (x as usize) + 100, seed).unwrap();
        build_realization(&gaps, 0.5, 1.0, x).unwrap()
    }

    #[test]
    fn constant_w_is_exact_and_matches_direct_count() {
        let r = sample(1, 200.0);
        let w = Perturbation::constant(0.3).unwrap();
        let c = count_with_bracketed_w(&r, &w, Boundary::Dirichlet, RefinePolicy::default()).unwrap();
        assert_eq!(c.n_lo, c.n_hi);
        let pieces: Vec<(f64, f64)> =
            r.base_pieces().iter().map(|p| (p.end - p.start, if p.bump { 1.0 } else { 0.0 } - 0.3)).collect();
        let q = PiecewisePotential::from_lengths(&pieces).unwrap();
        assert_eq!(count_negative_exact(&q, Boundary::Dirichlet, Boundary::Dirichlet).n_lo, c.n_lo);
    }

    #[test]
    fn zero_w_gives_nothing() {
        let r = sample(2, 300.0);
        let w = Perturbation::constant(0.0).unwrap();
        let dn = bracket_counts_dn(&r, &w, RefinePolicy::default()).unwrap();
        assert_eq!((dn.dirichlet, dn.neumann), (0, 0));
        let c = count_with_bracketed_w(&r, &w, Boundary::Dirichlet, RefinePolicy::default()).unwrap();
        assert_eq!((c.n_lo, c.n_hi), (0, 0));
    }

    #[test]
    fn refinement_never_widens() {
        let w = Perturbation::log_power(20.0, 2.0).unwrap();
        for seed in 0..10 {
            let r = sample(seed, 300.0);
            let mut prev: Option<CountCertificate> = None;
            for n in [1, 2, 4, 8, 16, 32, 64] {
                let c = count_with_bracketed_w(&r, &w, Boundary::Dirichlet, RefinePolicy::fixed(n)).unwrap();
                if let Some(p) = prev {
                    assert!(c.n_lo >= p.n_lo && c.n_hi <= p.n_hi, "n = {n}");
                }
                prev = Some(c);
            }
        }
    }

    #[test]
    fn checkpoints_agree_with_truncation() {
        let w = Perturbation::log_power(8.0, 2.0).unwrap();
        let r = sample(5, 500.0);
        let cps = [37.3, 100.0, 250.0, 500.0];
        let policy = RefinePolicy::fixed(8);
        let certs =
            count_realization_checkpoints(&r, &w, Boundary::Dirichlet, Boundary::Dirichlet, policy, &cps).unwrap();
        let mut prev = 0;
        for (c, x) in certs.iter().zip(cps) {
            let t = count_with_bracketed_w(&r.truncated(x).unwrap(), &w, Boundary::Dirichlet, policy).unwrap();
            assert_eq!((c.n_lo, c.n_hi), (t.n_lo, t.n_hi), "X = {x}");
            assert!(c.n_lo >= prev);
            prev = c.n_lo;
        }
        assert!(
            count_realization_checkpoints(&r, &w, Boundary::Dirichlet, Boundary::Dirichlet, policy, &[600.0]).is_err()
        );
    }

    #[test]
    fn tight_budget_is_flagged() {
        let w = Perturbation::log_power(200.0, 2.0).unwrap();
        let r = sample(3, 400.0);
        let c = count_with_bracketed_w(&r, &w, Boundary::Dirichlet, RefinePolicy { initial: 1, max: 1, tolerance: 0 })
            .unwrap();
        assert!(c.width() > 0 && c.flagged);
    }

    #[test]
    fn sandwich_on_sampled_instances() {
        let w = Perturbation::log_power(10.0, 2.0).unwrap();
        for seed in 0..20 {
            let r = sample(100 + seed, 400.0);
            let whole = count_with_bracketed_w(&r, &w, Boundary::Dirichlet, RefinePolicy::default()).unwrap();
            let dn = bracket_counts_dn(&r, &w, RefinePolicy::default()).unwrap();
            assert!(dn.dirichlet <= whole.n_lo && whole.n_hi <= dn.neumann, "{dn:?} {whole:?}");
        }
    }

    #[test]
    fn infinite_height_rejected() {
        let r = build_realization(&[1.0, 1.0], 0.5, f64::INFINITY, 3.0).unwrap();
        let w = Perturbation::constant(1.0).unwrap();
        assert!(matches!(
            count_with_bracketed_w(&r, &w, Boundary::Dirichlet, RefinePolicy::default()),
            Err(Error::NonFinite(_))
        ));
    }
}
