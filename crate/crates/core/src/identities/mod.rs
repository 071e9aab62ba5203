//! Closed-form identities behind the transforms, each checked by evaluating
//! both sides along separate numerical paths.

mod checks;
mod suite;

pub use suite::{
    fit_ineq17_constant, run_suite, GridSpec, SuiteReport, INEQ17_FIT_FACTOR, SWEEP_SIZE,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::Tolerance;

/// The identity families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    /// `K_{iτ}(x/2)` as a Stieltjes-type integral of `Re I_{iτ}(t/2)`.
    I19,
    /// Laplace transform of `K_{in}` at `cosh u`.
    I20,
    /// Stieltjes integral in terms of `e^z E_1(z)`.
    I22,
    /// Integral of `e^z E_1(z)` against `Re I_{in}(t/2)`.
    I23,
    /// Sine transform of the `Re J·K` kernel.
    I27,
    /// Integral of the `Re J·K` kernel against `t/(t² + cosh²u)`.
    I28,
    /// Integral of the `Im J·K` kernel against `1/(t² + cosh²u)`.
    I29,
    /// Partial sum of `sin(nt) sin(nu)` as two Dirichlet quotients.
    D29,
    /// Mellin–Barnes integral for `e^{-x/2} Re I_{iτ}(x/2)`.
    MB18,
    /// Mellin–Barnes integral for the `Re J·K` kernel.
    MB25,
    /// Mellin–Barnes integral for the `Im J·K` kernel.
    MB26,
    /// `|I_{iτ}(x)| <= I_0(x) √(sinh(πτ)/(πτ))`.
    INEQ16,
    /// `|K_{iτ}(x)| <= A x^{-1/4} / √sinh(πτ)` with a fitted `A`.
    INEQ17,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::I19,
        IdentityId::I20,
        IdentityId::I22,
        IdentityId::I23,
        IdentityId::I27,
        IdentityId::I28,
        IdentityId::I29,
        IdentityId::D29,
        IdentityId::MB18,
        IdentityId::MB25,
        IdentityId::MB26,
        IdentityId::INEQ16,
        IdentityId::INEQ17,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            IdentityId::I19 => "I19",
            IdentityId::I20 => "I20",
            IdentityId::I22 => "I22",
            IdentityId::I23 => "I23",
            IdentityId::I27 => "I27",
            IdentityId::I28 => "I28",
            IdentityId::I29 => "I29",
            IdentityId::D29 => "D29",
            IdentityId::MB18 => "MB18",
            IdentityId::MB25 => "MB25",
            IdentityId::MB26 => "MB26",
            IdentityId::INEQ16 => "INEQ16",
            IdentityId::INEQ17 => "INEQ17",
        }
    }

    /// Pass threshold, applied to both the absolute and the relative residual.
    ///
    /// One quadrature: `1e-9`. Bessel-product integrands: `1e-6`. Nested
    /// structures and contour integrals: `1e-5`.
    pub fn default_tolerance(self) -> f64 {
        match self {
            IdentityId::I20
            | IdentityId::I22
            | IdentityId::D29
            | IdentityId::INEQ16
            | IdentityId::INEQ17 => 1e-9,
            IdentityId::I27 | IdentityId::I28 | IdentityId::I29 => 1e-6,
            IdentityId::I19
            | IdentityId::I23
            | IdentityId::MB18
            | IdentityId::MB25
            | IdentityId::MB26 => 1e-5,
        }
    }

    /// Quadrature tolerance used by the suite, two digits tighter than the
    /// pass threshold.
    pub fn quadrature_tolerance(self) -> Tolerance {
        let t = self.default_tolerance() * 1e-2;
        Tolerance::unchecked(t, t, 2_000_000)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown identity '{s}'")))
    }
}

/// Parameters of one identity evaluation; unused fields stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct IdentityParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    /// Upper summation index of the Dirichlet identity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub big_n: Option<i64>,
    /// Abscissa of the Mellin–Barnes line.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// Constant `A` of the `K` bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
}

impl IdentityParams {
    pub fn with_n(mut self, n: i64) -> Self {
        self.n = Some(n);
        self
    }
    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = Some(tau);
        self
    }
    pub fn with_u(mut self, u: f64) -> Self {
        self.u = Some(u);
        self
    }
    pub fn with_x(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }
    pub fn with_t(mut self, t: f64) -> Self {
        self.t = Some(t);
        self
    }
    pub fn with_big_n(mut self, big_n: i64) -> Self {
        self.big_n = Some(big_n);
        self
    }
    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = Some(gamma);
        self
    }
    pub fn with_constant(mut self, a: f64) -> Self {
        self.constant = Some(a);
        self
    }
}

/// Both sides of one identity and the verdict.
///
/// `pass` holds when the evaluation converged and either residual is within
/// `tolerance_used`. For the inequalities the residual is the amount by which
/// the left side exceeds the bound, so it is zero whenever the bound holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub params: IdentityParams,
    pub lhs: f64,
    pub rhs: f64,
    /// Imaginary part of a contour integral, zero elsewhere.
    pub lhs_imag: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub converged: bool,
    pub pass: bool,
    pub tolerance_used: f64,
    pub evaluations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// One side computed numerically.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Side {
    value: f64,
    imag: f64,
    evaluations: u64,
    converged: bool,
}

impl Side {
    fn exact(value: f64) -> Self {
        Side {
            value,
            imag: 0.0,
            evaluations: 0,
            converged: true,
        }
    }
}

/// Evaluates both sides of `id` at `params`; `tol` drives every quadrature.
///
/// Invalid parameters are errors. Failures inside the evaluation come back
/// as a failed report with the error text in `diagnostic`.
pub fn verify(id: IdentityId, params: &IdentityParams, tol: &Tolerance) -> Result<IdentityReport> {
    checks::validate(id, params)?;
    let threshold = id.default_tolerance();
    let report = match checks::evaluate(id, params, tol) {
        Ok((lhs, rhs)) => {
            let (abs_residual, rel_residual) = if checks::is_inequality(id) {
                let excess = (lhs.value - rhs.value).max(0.0);
                (excess, excess / rhs.value.abs())
            } else {
                let d = (lhs.value - rhs.value).abs();
                (d, d / lhs.value.abs().max(rhs.value.abs()))
            };
            let rel_residual = if rel_residual.is_nan() {
                0.0
            } else {
                rel_residual
            };
            let converged = lhs.converged && rhs.converged;
            IdentityReport {
                id,
                params: *params,
                lhs: lhs.value,
                rhs: rhs.value,
                lhs_imag: lhs.imag,
                abs_residual,
                rel_residual,
                converged,
                pass: converged && (abs_residual <= threshold || rel_residual <= threshold),
                tolerance_used: threshold,
                evaluations: lhs.evaluations + rhs.evaluations,
                diagnostic: (!converged).then(|| "quadrature did not reach its tolerance".into()),
            }
        }
        Err(e) => IdentityReport {
            id,
            params: *params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            lhs_imag: 0.0,
            abs_residual: f64::NAN,
            rel_residual: f64::NAN,
            converged: false,
            pass: false,
            tolerance_used: threshold,
            evaluations: 0,
            diagnostic: Some(e.to_string()),
        },
    };
    Ok(report)
}
