//! Special functions behind every kernel: complex gamma, Bessel functions of
//! purely imaginary order `iτ` at real positive argument, and the
//! exponentially scaled exponential integral `g(z) = e^z Γ(0, z)`.
//!
//! Production paths are power series, continued fractions, backward
//! recurrence and large-argument expansions. Integral representations are
//! kept out of this module; tests use them as independent oracles.

mod bessel_i;
mod bessel_j;
mod bessel_k;
mod expint;
mod gamma;

pub use bessel_i::{bessel_i_imag, bessel_i_imag_scaled};
pub use bessel_j::{bessel_j_imag, bessel_j_imag_scaled};
pub use bessel_k::{bessel_k_imag, bessel_k_imag_scaled, KValue};
pub use expint::exp_scaled_e1;
pub use gamma::{complex_gamma, ln_complex_gamma};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexValue = Complex64;

/// Largest supported order. Beyond it the `sinh(πτ)` and `cosh(πτ/2)`
/// scalings eat too many binary64 digits downstream.
pub const TAU_MAX: f64 = 20.0;

/// Overflow guard for the unscaled modified Bessel function `I_{iτ}(x)`.
pub const X_MAX: f64 = 700.0;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Nonnegative imaginary-order parameter τ (the order is `iτ`).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::Domain {
                name: "tau",
                value: tau,
                expected: "finite and >= 0",
            });
        }
        if tau > TAU_MAX {
            return Err(Error::OrderTooLarge { tau, max: TAU_MAX });
        }
        Ok(Order(tau))
    }

    pub fn integer(n: u32) -> Result<Self> {
        Order::new(f64::from(n))
    }

    pub fn tau(self) -> f64 {
        self.0
    }
}

pub(crate) fn check_positive(name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: x,
            expected: "finite and > 0",
        })
    }
}

/// Series prefactor `(x/2)^{iτ} / Γ(1+iτ) · e^{-shift}`. `tau` may be negative
/// here; the public API restricts it to `Order`.
pub(crate) fn series_prefactor(tau: f64, x: f64, shift: f64) -> Complex64 {
    let lg = ln_gamma_one_plus_itau(tau);
    let exponent = Complex64::new(-lg.re - shift, tau * (0.5 * x).ln() - lg.im);
    exponent.exp()
}

/// `ln Γ(1 + iτ)` with the modulus taken from the exact reflection identity
/// `|Γ(1+iτ)|² = πτ / sinh(πτ)`.
pub(crate) fn ln_gamma_one_plus_itau(tau: f64) -> Complex64 {
    if tau == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let lg = gamma::ln_gamma_right(Complex64::new(1.0, tau));
    let at = tau.abs();
    let pt = std::f64::consts::PI * at;
    // ln(πτ / sinh πτ) = ln(2πτ) - πτ - ln(1 - e^{-2πτ})
    let modulus = 0.5 * ((2.0 * pt).ln() - pt - (-(-2.0 * pt).exp()).ln_1p());
    Complex64::new(modulus, lg.im)
}
