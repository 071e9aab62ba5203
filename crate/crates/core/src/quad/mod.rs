//! Deterministic quadrature and series summation.
//!
//! Everything here is single-threaded and reduces in a fixed order, so two
//! calls with the same inputs give bit-identical results.

mod adaptive;
mod contour;
mod semi_infinite;
mod series;

pub use adaptive::{integrate_finite, try_integrate_finite};
pub use contour::{integrate_contour, integrate_contour_beyond, ContourResult};
pub use semi_infinite::{
    integrate_semi_infinite, try_integrate_semi_infinite, try_integrate_semi_infinite_split,
    DecayHint,
};
pub use series::{sum_series, try_sum_series, TruncationPolicy};

use crate::error::{Error, Result};

/// Smallest tolerance a caller may request.
pub const MIN_TOL: f64 = 1e-15;
/// Largest evaluation budget a caller may request.
pub const MAX_EVALS: u64 = 100_000_000;

/// Requested accuracy and evaluation budget. The target for a value `v` is
/// `max(abs_tol, rel_tol·|v|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    abs_tol: f64,
    rel_tol: f64,
    max_evals: u64,
    /// Relative accuracy of the integrand values themselves. Panels whose
    /// error is already at this level are not split further.
    noise: f64,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_evals: u64) -> Result<Self> {
        if !(abs_tol.is_finite() && abs_tol >= MIN_TOL) {
            return Err(Error::InvalidTolerance(
                "abs_tol must be finite and >= 1e-15",
            ));
        }
        if !(rel_tol.is_finite() && rel_tol >= MIN_TOL) {
            return Err(Error::InvalidTolerance(
                "rel_tol must be finite and >= 1e-15",
            ));
        }
        if max_evals == 0 || max_evals > MAX_EVALS {
            return Err(Error::InvalidTolerance("max_evals must be in 1..=1e8"));
        }
        Ok(Tolerance {
            abs_tol,
            rel_tol,
            max_evals,
            noise: 0.0,
        })
    }

    /// Skips the user-facing floor. Used when a validated tolerance is split
    /// between nested stages.
    pub(crate) fn unchecked(abs_tol: f64, rel_tol: f64, max_evals: u64) -> Self {
        Tolerance {
            abs_tol,
            rel_tol,
            max_evals: max_evals.max(1),
            noise: 0.0,
        }
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_evals(&self) -> u64 {
        self.max_evals
    }

    /// Same budget with the absolute tolerance divided by `parts`.
    pub fn split_abs(&self, parts: f64) -> Self {
        Tolerance {
            abs_tol: self.abs_tol / parts,
            ..*self
        }
    }

    pub fn with_max_evals(&self, max_evals: u64) -> Self {
        Tolerance {
            max_evals: max_evals.max(1),
            ..*self
        }
    }

    /// Declares that integrand values are only accurate to `relative`.
    pub(crate) fn with_noise(&self, relative: f64) -> Self {
        Tolerance {
            noise: relative,
            ..*self
        }
    }

    /// `max(abs_tol, rel_tol·|value|)`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::unchecked(1e-10, 1e-10, 1_000_000)
    }
}

/// Outcome of an integral or a series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
    /// Set by semi-infinite integration when the integrand decays more slowly
    /// than the declared hint.
    pub hint_violated: bool,
}

impl QuadratureResult {
    pub fn exact_zero() -> Self {
        QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
            hint_violated: false,
        }
    }
}

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}
