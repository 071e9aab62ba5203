use std::f64::consts::PI;

use num_complex::Complex64;

use super::{bessel_k, check_positive, series_prefactor, Order, X_MAX};
use crate::error::{Error, Result};

const SERIES_CUTOFF: f64 = 1e-17;
const ASYMPTOTIC_MIN_X: f64 = 25.0;

/// Modified Bessel function of the first kind `I_{iτ}(x)` for `0 < x <= X_MAX`.
pub fn bessel_i_imag(order: Order, x: f64) -> Result<Complex64> {
    check_positive("x", x)?;
    if x > X_MAX {
        return Err(Error::Overflow {
            what: "modified Bessel I beyond X_MAX",
        });
    }
    let scaled = bessel_i_imag_scaled(order, x)?;
    let grow = x.exp();
    let value = scaled * grow;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow {
            what: "modified Bessel I",
        });
    }
    Ok(value)
}

/// `e^{-x} I_{iτ}(x)`, finite for every `x > 0`.
///
/// The real part comes from the ascending series or, for large `x`, from the
/// Hankel expansion whose coefficients are all positive at imaginary order.
/// In the large-`x` regime the imaginary part is exponentially small and is
/// recovered exactly from `Im I_{iτ} = -sinh(πτ) K_{iτ} / π`.
pub fn bessel_i_imag_scaled(order: Order, x: f64) -> Result<Complex64> {
    check_positive("x", x)?;
    let tau = order.tau();
    if x >= ASYMPTOTIC_MIN_X {
        if let Some(re) = hankel_scaled_real(tau, x) {
            let im = if tau == 0.0 {
                0.0
            } else {
                // e^{-x} K = e^{-2x} (e^{x} K)
                let k_scaled = bessel_k::bessel_k_imag_scaled(order, x)?;
                -(PI * tau).sinh() / PI * k_scaled * (-2.0 * x).exp()
            };
            return Ok(Complex64::new(re, im));
        }
    }
    if x > X_MAX {
        return Err(Error::AccuracyLoss {
            estimate: f64::INFINITY,
            limit: 1e-8,
        });
    }
    Ok(series_scaled(tau, x))
}

/// Ascending series `Σ (x/2)^{2k+iτ} / (k! Γ(k+1+iτ))` times `e^{-x}`.
/// Half of the exponential scale goes into the first term and half is applied
/// at the end so no term over- or underflows for `x <= X_MAX`.
pub(crate) fn series_scaled(tau: f64, x: f64) -> Complex64 {
    let q = 0.25 * x * x;
    if tau == 0.0 {
        let mut term = (-0.5 * x).exp();
        let mut sum = term;
        let mut peak = sum.abs();
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= q / (k * k);
            sum += term;
            peak = peak.max(sum.abs());
            if term.abs() < SERIES_CUTOFF * peak {
                break;
            }
        }
        return Complex64::new(sum * (-0.5 * x).exp(), 0.0);
    }
    let mut term = series_prefactor(tau, x, 0.5 * x);
    let mut sum = term;
    let mut peak = sum.norm();
    let mut k = 0.0;
    loop {
        k += 1.0;
        term = term * q / Complex64::new(k * k, k * tau);
        sum += term;
        peak = peak.max(sum.norm());
        if term.norm() < SERIES_CUTOFF * peak {
            break;
        }
    }
    sum * (-0.5 * x).exp()
}

/// `Re e^{-x} I_{iτ}(x) ≈ (2πx)^{-1/2} Σ_k Π_{j≤k}(4τ² + (2j-1)²) / (k! (8x)^k)`.
/// Returns `None` when the terms stop shrinking before reaching round-off.
fn hankel_scaled_real(tau: f64, x: f64) -> Option<f64> {
    let four_tau2 = 4.0 * tau * tau;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = f64::from(k);
        let odd = 2.0 * kf - 1.0;
        term *= (four_tau2 + odd * odd) / (kf * 8.0 * x);
        // Terms may rise while (2k-1)² < 4τ²; growth after that means the
        // smallest term has been passed.
        if term > prev && odd * odd > four_tau2 {
            return (prev < 2e-16 * sum).then(|| sum / (2.0 * PI * x).sqrt());
        }
        sum += term;
        if term < 1e-17 * sum {
            return Some(sum / (2.0 * PI * x).sqrt());
        }
        prev = term;
    }
    None
}
