use std::fmt::Write as _;

use rand::Rng;

use super::dist::{GapDistribution, GapStream};
use crate::error::{Error, Result};
use crate::fmt::sig12;
use crate::rng;

/// One sampled bump configuration on `[0, X]`.
///
/// Bump `k` (1-based) occupies `[x_k - l, x_k + l]` with
/// `x_k = L_1 + ... + L_k + (2k - 1) l`. Only the gaps needed to determine
/// the potential on `[0, X]` are kept; a bump straddling `X` is clipped.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialRealization {
    half_width: f64,
    height: f64,
    domain: f64,
    gaps: Vec<f64>,
    centers: Vec<f64>,
}

/// A maximal piece of `[0, X]` on which the potential is constant and which
/// lies inside one bracketing interval `[x_k, x_{k+1}]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasePiece {
    pub start: f64,
    pub end: f64,
    pub bump: bool,
    /// Index of the bracketing interval: 0 for `[0, x_1]`, `k` for
    /// `[x_k, x_{k+1}]`.
    pub interval: usize,
}

/// Bump centers from gap lengths and half width `l`.
fn centers_of(gaps: &[f64], l: f64) -> Vec<f64> {
    let mut x = -l;
    gaps.iter()
        .map(|g| {
            x += g + 2.0 * l;
            x
        })
        .collect()
}

/// Assembles a realization from gap lengths.
///
/// Fails with [`Error::DomainNotCovered`] when the last bump ends before `x_max`;
/// the caller should draw more gaps.
pub fn build_realization(gaps: &[f64], l: f64, h: f64, x_max: f64) -> Result<PotentialRealization> {
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::InvalidParameter(format!("half width l must be positive, got {l}")));
    }
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidParameter(format!("height h must be positive, got {h}")));
    }
    if !(x_max.is_finite() && x_max > 0.0) {
        return Err(Error::InvalidParameter(format!("truncation X must be positive, got {x_max}")));
    }
    if let Some(g) = gaps.iter().find(|g| !(g.is_finite() && **g >= 0.0)) {
        return Err(Error::InvalidParameter(format!("gap lengths must be finite and >= 0, got {g}")));
    }
    let centers = centers_of(gaps, l);
    let last = centers.partition_point(|&c| c + l < x_max);
    if last == centers.len() {
        return Err(Error::DomainNotCovered { reached: centers.last().map_or(0.0, |c| c + l), required: x_max });
    }
    Ok(PotentialRealization {
        half_width: l,
        height: h,
        domain: x_max,
        gaps: gaps[..=last].to_vec(),
        centers: centers[..=last].to_vec(),
    })
}

impl PotentialRealization {
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    /// Truncation point `X`.
    pub fn domain(&self) -> f64 {
        self.domain
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    /// Number of bump centers in `[0, x]`.
    pub fn bumps_up_to(&self, x: f64) -> usize {
        self.centers.partition_point(|&c| c <= x)
    }

    /// Largest gap that starts inside `[0, X]`.
    pub fn max_gap(&self) -> f64 {
        self.gaps.iter().copied().fold(0.0, f64::max)
    }

    /// `V(x)`, either `0` or `h`.
    pub fn value(&self, x: f64) -> f64 {
        let l = self.half_width;
        let i = self.centers.partition_point(|&c| c + l < x);
        match self.centers.get(i) {
            Some(&c) if x >= c - l => self.height,
            _ => 0.0,
        }
    }

    /// Same gaps, shorter truncation point.
    pub fn truncated(&self, x_max: f64) -> Result<Self> {
        if x_max > self.domain {
            return Err(Error::DomainNotCovered { reached: self.domain, required: x_max });
        }
        build_realization(&self.gaps, self.half_width, self.height, x_max)
    }

    /// Occupied intervals after merging touching bumps, clipped to `[0, X]`.
    pub fn merged_bumps(&self) -> Vec<(f64, f64)> {
        let l = self.half_width;
        let mut out: Vec<(f64, f64)> = Vec::new();
        for &c in &self.centers {
            let (a, b) = (c - l, (c + l).min(self.domain));
            if a >= self.domain {
                break;
            }
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = b,
                _ => out.push((a, b)),
            }
        }
        out
    }

    /// Constant pieces split at bump edges and centers.
    pub fn base_pieces(&self) -> Vec<BasePiece> {
        self.base_pieces_split(&[])
    }

    /// As [`base_pieces`](Self::base_pieces), additionally split at every
    /// point of the sorted slice `splits`.
    pub fn base_pieces_split(&self, splits: &[f64]) -> Vec<BasePiece> {
        let l = self.half_width;
        let x_max = self.domain;
        let mut out = Vec::with_capacity(3 * self.centers.len() + splits.len());
        let mut cuts = splits.iter().copied().filter(|&s| s > 0.0 && s < x_max).peekable();
        let mut push = |start: f64, end: f64, bump: bool, interval: usize| {
            let end = end.min(x_max);
            let mut a = start;
            if end <= a {
                return;
            }
            while let Some(&s) = cuts.peek() {
                if s <= a {
                    cuts.next();
                } else if s < end {
                    out.push(BasePiece { start: a, end: s, bump, interval });
                    a = s;
                    cuts.next();
                } else {
                    break;
                }
            }
            out.push(BasePiece { start: a, end, bump, interval });
        };
        let mut prev_edge = 0.0;
        for (k, &c) in self.centers.iter().enumerate() {
            push(prev_edge, c - l, false, k);
            push(c - l, c, true, k);
            push(c, c + l, true, k + 1);
            prev_edge = c + l;
        }
        out
    }

    /// Line-oriented text form: header `l=<v> h=<v> X=<v>`, then one gap per
    /// line. Values use the shortest representation that parses back to the
    /// same `f64`.
    pub fn to_text(&self) -> String {
        let mut s = format!("l={} h={} X={}\n", self.half_width, self.height, self.domain);
        for g in &self.gaps {
            writeln!(s, "{g}").expect("write to string");
        }
        s
    }

    /// Parses [`to_text`](Self::to_text) output. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut header: Option<(f64, f64, f64)> = None;
        let mut gaps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            if header.is_none() {
                let (mut l, mut h, mut x) = (None, None, None);
                for tok in line.split_whitespace() {
                    let (k, v) = tok.split_once('=').ok_or_else(|| perr(format!("expected key=value, got `{tok}`")))?;
                    let v: f64 = v.parse().map_err(|_| perr(format!("bad number `{v}` for `{k}`")))?;
                    match k {
                        "l" => l = Some(v),
                        "h" => h = Some(v),
                        "X" => x = Some(v),
                        _ => return Err(perr(format!("unknown header key `{k}`"))),
                    }
                }
                match (l, h, x) {
                    (Some(l), Some(h), Some(x)) => header = Some((l, h, x)),
                    _ => return Err(perr("header must define l, h and X".into())),
                }
            } else {
                let g: f64 = line.parse().map_err(|_| perr(format!("bad gap `{line}`")))?;
                if !(g.is_finite() && g >= 0.0) {
                    return Err(perr(format!("gap must be finite and >= 0, got {g}")));
                }
                gaps.push(g);
            }
        }
        let (l, h, x) = header.ok_or(Error::Parse { line: 0, msg: "missing header line".into() })?;
        build_realization(&gaps, l, h, x)
    }

    /// CSV rows `k,x_k,L_k` with a header row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,x_k,L_k\n");
        for (k, (c, g)) in self.centers.iter().zip(&self.gaps).enumerate() {
            writeln!(s, "{},{},{}", k + 1, sig12(*c), sig12(*g)).expect("write to string");
        }
        s
    }
}

/// Draws gaps from `dist` until the bumps cover `[0, x_max]`, giving up with
/// [`Error::Coverage`] after `max_gaps` draws.
pub fn sample_covering(
    dist: &GapDistribution,
    l: f64,
    h: f64,
    x_max: f64,
    seed: u64,
    max_gaps: usize,
) -> Result<PotentialRealization> {
    dist.validate()?;
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::InvalidParameter(format!("half width must be > 0, got {l}")));
    }
    let mut gaps = Vec::new();
    let mut center = -l;
    for g in GapStream::new(*dist, seed).take(max_gaps) {
        gaps.push(g);
        center += g + 2.0 * l;
        if center + l >= x_max {
            return build_realization(&gaps, l, h, x_max);
        }
    }
    Err(Error::Coverage(max_gaps))
}

/// Bernoulli lattice potential: cell `[j, j + 1)` carries height `h` with
/// probability `p`, independently.
///
/// Every occupied cell becomes one bump with `l = 1/2`; the gap before it is
/// the number of empty cells since the previous occupied one, so gaps are
/// geometric with `P(L >= m) = (1 - p)^m`. Cells are drawn past `X` until an
/// occupied one closes the domain.
pub fn bernoulli_lattice(p: f64, h: f64, x_max: f64, seed: u64) -> Result<PotentialRealization> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!("occupation probability must lie in (0, 1), got {p}")));
    }
    if !(x_max.is_finite() && x_max >= 1.0) {
        return Err(Error::InvalidParameter(format!("lattice truncation must be >= 1, got {x_max}")));
    }
    let mut rng = rng::stream(seed);
    let mut gaps = Vec::new();
    let mut run = 0u64;
    let mut cell = 0u64;
    loop {
        if rng.gen::<f64>() < p {
            gaps.push(run as f64);
            run = 0;
            if (cell + 1) as f64 >= x_max {
                break;
            }
        } else {
            run += 1;
        }
        cell += 1;
    }
    build_realization(&gaps, 0.5, h, x_max)
}
