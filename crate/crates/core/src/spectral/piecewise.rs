use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fmt::sig12;

/// Boundary condition at an interval end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// `u = 0`.
    Dirichlet,
    /// `u' = 0`.
    Neumann,
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" | "d" | "dirichlet" => Ok(Self::Dirichlet),
            "N" | "n" | "neumann" => Ok(Self::Neumann),
            _ => Err(Error::InvalidParameter(format!("unknown boundary condition `{s}`"))),
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Dirichlet => "D",
            Self::Neumann => "N",
        })
    }
}

/// Piecewise-constant `q` on `[breakpoints[0], breakpoints[n]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePotential {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewisePotential {
    /// `values[i]` holds on `[breakpoints[i], breakpoints[i + 1]]`.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPotential);
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::InvalidParameter(format!(
                "{} breakpoints for {} pieces",
                breakpoints.len(),
                values.len()
            )));
        }
        if let Some(v) = breakpoints.iter().chain(&values).find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("piecewise potential contains {v}")));
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("breakpoints must be strictly increasing".into()));
        }
        Ok(Self { breakpoints, values })
    }

    /// Single piece `q = value` on `[0, length]`.
    pub fn constant(value: f64, length: f64) -> Result<Self> {
        Self::new(vec![0.0, length], vec![value])
    }

    /// Builds from `(length, value)` pairs laid end to end from 0.
    pub fn from_lengths(pieces: &[(f64, f64)]) -> Result<Self> {
        let mut bp = Vec::with_capacity(pieces.len() + 1);
        bp.push(0.0);
        let mut x = 0.0;
        for &(len, _) in pieces {
            x += len;
            bp.push(x);
        }
        Self::new(bp, pieces.iter().map(|p| p.1).collect())
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn start(&self) -> f64 {
        self.breakpoints[0]
    }

    pub fn end(&self) -> f64 {
        *self.breakpoints.last().expect("nonempty")
    }

    pub fn length(&self) -> f64 {
        self.end() - self.start()
    }

    /// `(length, value)` for each piece.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.breakpoints.windows(2).zip(&self.values).map(|(w, &v)| (w[1] - w[0], v))
    }

    /// `q(x)`; a breakpoint takes the value of the piece to its right.
    pub fn eval(&self, x: f64) -> f64 {
        let i = self.breakpoints.partition_point(|&b| b <= x);
        self.values[i.clamp(1, self.values.len()) - 1]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Every value plus `shift`.
    pub fn shifted(&self, shift: f64) -> Self {
        Self { breakpoints: self.breakpoints.clone(), values: self.values.iter().map(|v| v + shift).collect() }
    }

    /// Same values, all breakpoints moved by `dx`.
    pub fn translated(&self, dx: f64) -> Self {
        Self { breakpoints: self.breakpoints.iter().map(|b| b + dx).collect(), values: self.values.clone() }
    }

    /// CSV rows `piece_start,piece_end,value` with a header row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("piece_start,piece_end,value\n");
        for (w, v) in self.breakpoints.windows(2).zip(&self.values) {
            writeln!(s, "{},{},{}", sig12(w[0]), sig12(w[1]), sig12(*v)).expect("write to string");
        }
        s
    }
}

/// How a count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    PruferExact,
    FdInertia,
    BracketDn,
    Decoupled,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PruferExact => "prufer-exact",
            Self::FdInertia => "fd-inertia",
            Self::BracketDn => "bracket-DN",
            Self::Decoupled => "decoupled",
        })
    }
}

/// Certified interval `[n_lo, n_hi]` for a negative-eigenvalue count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountCertificate {
    pub n_lo: usize,
    pub n_hi: usize,
    /// `(interval index, count)` pairs when the count is a sum over intervals.
    pub per_interval: Option<Vec<(usize, usize)>>,
    pub method: Method,
    /// Set when refinement stopped before the requested bracket width.
    pub flagged: bool,
}

impl CountCertificate {
    pub fn exact(n: usize, method: Method) -> Self {
        Self { n_lo: n, n_hi: n, per_interval: None, method, flagged: false }
    }

    pub fn width(&self) -> usize {
        self.n_hi - self.n_lo
    }

    pub fn contains(&self, n: usize) -> bool {
        self.n_lo <= n && n <= self.n_hi
    }

    /// CSV row `method,n_lo,n_hi`.
    pub fn csv_row(&self) -> String {
        format!("{},{},{}", self.method, self.n_lo, self.n_hi)
    }

    pub const CSV_HEADER: &'static str = "method,n_lo,n_hi";
}
