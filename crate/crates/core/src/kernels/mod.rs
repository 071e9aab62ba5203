//! Forward kernels of the three transform families and their inversion
//! kernels.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{try_integrate_finite, QuadratureResult, Tolerance};
use crate::specfun::{
    bessel_i_imag_scaled, bessel_j_imag_scaled, bessel_k_imag, exp_scaled_e1, Order,
};

/// The three kernel families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TransformKind {
    /// `e^{-x/2} Re I_{in}(x/2)`
    #[serde(rename = "re-i")]
    ReI,
    /// `Re J_{in}(2√(2x)) K_{in}(2√(2x)) / cosh(πn/2)`
    #[serde(rename = "re-jk")]
    ReJK,
    /// `Im J_{in}(2√(2x)) K_{in}(2√(2x)) / sinh(πn/2)`
    #[serde(rename = "im-jk")]
    ImJK,
}

impl TransformKind {
    pub const ALL: [TransformKind; 3] =
        [TransformKind::ReI, TransformKind::ReJK, TransformKind::ImJK];

    /// Smallest index of a synthesis sum.
    pub fn synthesis_start(self) -> i64 {
        match self {
            TransformKind::ReJK => 0,
            TransformKind::ReI | TransformKind::ImJK => 1,
        }
    }

    /// Smallest index at which the forward kernel is defined.
    pub fn min_index(self) -> i64 {
        match self {
            TransformKind::ReI | TransformKind::ReJK => 0,
            TransformKind::ImJK => 1,
        }
    }

    /// Constant in front of `sinh(πn)` in the inversion formulas.
    pub fn inversion_constant(self) -> f64 {
        let pi2 = PI * PI;
        match self {
            TransformKind::ReI => 1.0 / pi2,
            TransformKind::ReJK => 8.0 / pi2,
            TransformKind::ImJK => 4.0 / pi2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::ReI => "re-i",
            TransformKind::ReJK => "re-jk",
            TransformKind::ImJK => "im-jk",
        }
    }

    pub(crate) fn check_forward_index(self, n: i64) -> Result<u32> {
        if n < self.min_index() {
            return Err(Error::IndexOutOfRange { kind: self, n });
        }
        index_order(n)
    }
}

fn index_order(n: i64) -> Result<u32> {
    let tau = n as f64;
    Order::new(tau)?;
    Ok(n as u32)
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "re-i" | "rei" => Ok(TransformKind::ReI),
            "re-jk" | "rejk" => Ok(TransformKind::ReJK),
            "im-jk" | "imjk" => Ok(TransformKind::ImJK),
            other => Err(Error::Parse(format!(
                "unknown kind '{other}' (expected re-i, re-jk or im-jk)"
            ))),
        }
    }
}

/// Forward kernel of `kind` at index `n` and `x > 0`.
///
/// For the `J·K` kinds the `e^{πn/2}` growth of `J_{in}` is removed inside
/// the series, so the product is formed from `e^{-πn/2}J_{in}`, `K_{in}` and
/// `2/(1 ± e^{-πn})` and no intermediate is larger than the result needs.
pub fn forward_kernel(kind: TransformKind, n: i64, x: f64) -> Result<f64> {
    let n = kind.check_forward_index(n)?;
    check_x(x)?;
    let order = Order::integer(n)?;
    let tau = f64::from(n);
    match kind {
        TransformKind::ReI => Ok(bessel_i_imag_scaled(order, 0.5 * x)?.re),
        TransformKind::ReJK | TransformKind::ImJK => {
            let y = 2.0 * (2.0 * x).sqrt();
            let k = bessel_k_imag(order, y)?.value;
            if k == 0.0 {
                return Ok(0.0);
            }
            let j = bessel_j_imag_scaled(order, y)?;
            let e = (-PI * tau).exp();
            Ok(match kind {
                TransformKind::ReJK => j.re * k * 2.0 / (1.0 + e),
                _ => j.im * k * 2.0 / (1.0 - e),
            })
        }
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "x",
            value: x,
            expected: "finite and > 0",
        })
    }
}

/// Default accuracy for the inversion kernels.
pub fn default_kernel_tolerance() -> Tolerance {
    Tolerance::new(1e-12, 1e-10, 200_000).expect("valid constant tolerance")
}

/// Integrand of the inversion kernel at angle `u ∈ (0, π)`, without `sin(nu)`.
pub(crate) fn inverse_weight(kind: TransformKind, x: f64, u: f64) -> Result<f64> {
    match kind {
        TransformKind::ReI => {
            let c = (0.5 * u).cosh();
            Ok(exp_scaled_e1(x * c * c)? * u.sinh())
        }
        TransformKind::ReJK => {
            let c = u.cosh();
            Ok(x * u.sinh() / (x * x + c * c))
        }
        TransformKind::ImJK => {
            let c = u.cosh();
            Ok((2.0 * u).sinh() / (x * x + c * c))
        }
    }
}

/// Inversion kernel `Φ_n`, `Ψ_n` or `Ω_n` at `x > 0`:
///
/// * `ReI`:  `∫_0^π g(x cosh²(u/2)) sinh(u) sin(nu) du`, `g(z) = e^z E_1(z)`
/// * `ReJK`: `x ∫_0^π sinh(u) sin(nu) / (x² + cosh²u) du`
/// * `ImJK`: `∫_0^π sinh(2u) sin(nu) / (x² + cosh²u) du`
///
/// `n = 0` gives exactly zero without integrating.
pub fn inverse_kernel(
    kind: TransformKind,
    n: i64,
    x: f64,
    tol: &Tolerance,
) -> Result<QuadratureResult> {
    if n < 0 {
        return Err(Error::IndexOutOfRange { kind, n });
    }
    index_order(n)?;
    check_x(x)?;
    if n == 0 {
        return Ok(QuadratureResult::exact_zero());
    }
    let nf = n as f64;
    try_integrate_finite(
        |u| Ok(inverse_weight(kind, x, u)? * (nf * u).sin()),
        0.0,
        PI,
        tol,
    )
}
