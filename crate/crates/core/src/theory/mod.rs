//! Closed-form borderline laws and diagnostics for the finite/infinite
//! dichotomy of the negative spectrum.

mod bc_sum;
mod borderline;
mod expect;
pub mod quad;

pub use bc_sum::{bc_sum, fit_decay_exponent, BcSum, Verdict, VERDICT_MARGIN};
pub use borderline::{approx_weights, borderline, ApproxWeights, BorderlineLaw, LawForm, Side};
pub use expect::{expectation_bounds, tail_integral, ExpectationBounds};
