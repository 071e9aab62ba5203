use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_positive, series_prefactor, Order};
use crate::error::{Error, Result};

const ACCURACY_LIMIT: f64 = 1e-8;
const SERIES_MAX_X: f64 = 8.0;
const HANKEL_MIN_X: f64 = 20.0;

/// Bessel function of the first kind `J_{iτ}(x)`, `x > 0`.
pub fn bessel_j_imag(order: Order, x: f64) -> Result<Complex64> {
    j_shifted(order.tau(), x, 0.0)
}

/// `e^{-πτ/2} J_{iτ}(x)`. The scale is folded into the series prefactor, so
/// intermediates stay `O(1)` even where `|J_{iτ}|` is `O(e^{πτ/2})`.
pub fn bessel_j_imag_scaled(order: Order, x: f64) -> Result<Complex64> {
    j_shifted(order.tau(), x, 0.5 * PI * order.tau())
}

pub(crate) fn j_shifted(tau: f64, x: f64, shift: f64) -> Result<Complex64> {
    check_positive("x", x)?;
    let (value, abs_error) = if x <= SERIES_MAX_X {
        series(tau, x, shift)
    } else {
        let hankel = if x >= HANKEL_MIN_X {
            hankel(tau, x, shift)
        } else {
            None
        };
        match hankel {
            Some(h) if h.1 <= 1e-15 * envelope(tau, x, shift) => h,
            _ => miller(tau, x, shift),
        }
    };
    let estimate = abs_error / value.norm().max(envelope(tau, x, shift));
    if !(estimate <= ACCURACY_LIMIT) {
        return Err(Error::AccuracyLoss {
            estimate,
            limit: ACCURACY_LIMIT,
        });
    }
    Ok(value)
}

/// Size of `|J_{iτ}|` away from its zeros, `√(2/πx) cosh(πτ/2) e^{-shift}`
/// (with `x` clamped to 1 below). Error estimates are measured against this,
/// so a zero of `J` is not mistaken for an accuracy loss.
fn envelope(tau: f64, x: f64, shift: f64) -> f64 {
    let b = 0.5 * PI * tau;
    let cosh_b = 0.5 * ((b - shift).exp() + (-b - shift).exp());
    (2.0 / (PI * x.max(1.0))).sqrt() * cosh_b
}

// Each method below returns the value and an absolute error estimate.

/// Alternating ascending series; round-off is about `ε · max|term|`.
pub(crate) fn series(tau: f64, x: f64, shift: f64) -> (Complex64, f64) {
    let q = -0.25 * x * x;
    let mut term = series_prefactor(tau, x, shift);
    let mut sum = term;
    let mut largest = term.norm();
    let mut k = 0.0;
    loop {
        k += 1.0;
        term = term * q / Complex64::new(k * k, k * tau);
        sum += term;
        largest = largest.max(term.norm());
        if term.norm() < 1e-17 * sum.norm() && k > 0.5 * x {
            break;
        }
        if k > 10_000.0 {
            break;
        }
    }
    (sum, f64::EPSILON * largest)
}

/// Miller's backward recurrence over the orders `iτ + k`, normalised with the
/// Neumann sum `Σ_k (ν+2k) Γ(ν+k)/(Γ(ν+1) k!) J_{ν+2k}(x) = (x/2)^ν / Γ(ν+1)`.
pub(crate) fn miller(tau: f64, x: f64, shift: f64) -> (Complex64, f64) {
    let nu = Complex64::new(0.0, tau);
    let mut top = (x + 40.0 + 2.0 * (20.0 * x).sqrt()).ceil() as usize;
    if top % 2 == 1 {
        top += 1;
    }
    let mut values = vec![Complex64::new(0.0, 0.0); top + 1];
    let mut upper = Complex64::new(0.0, 0.0);
    let mut current = Complex64::new(1e-30, 0.0);
    values[top] = current;
    for k in (1..=top).rev() {
        let lower = (nu + k as f64) * (2.0 / x) * current - upper;
        upper = current;
        current = lower;
        values[k - 1] = current;
        if current.norm() > 1e250 {
            for v in values[k - 1..].iter_mut() {
                *v *= 1e-250;
            }
            upper *= 1e-250;
            current *= 1e-250;
        }
    }
    let mut norm = values[0];
    let mut magnitude = values[0].norm();
    let mut coeff = Complex64::new(1.0, 0.0);
    for k in 1..=top / 2 {
        if k > 1 {
            coeff = coeff * (nu + (k - 1) as f64) / k as f64;
        }
        let contrib = (nu + 2.0 * k as f64) * coeff * values[2 * k];
        norm += contrib;
        magnitude += contrib.norm();
    }
    let rhs = series_prefactor(tau, x, shift);
    let value = rhs * (values[0] / norm);
    let abs_error = 8.0 * f64::EPSILON * magnitude / norm.norm() * value.norm();
    (value, abs_error)
}

/// Hankel expansion `√(2/πx) (P cos χ - Q sin χ)`, `χ = x - (iτ/2 + 1/4)π`.
/// Coefficients are real at imaginary order. Returns `None` if the terms never
/// shrink, else the value and the size of the first omitted term.
pub(crate) fn hankel(tau: f64, x: f64, shift: f64) -> Option<(Complex64, f64)> {
    let mu = -4.0 * tau * tau;
    let mut terms = Vec::with_capacity(64);
    let mut term = 1.0f64;
    let mut k = 0.0;
    loop {
        terms.push(term);
        k += 1.0;
        let odd = 2.0 * k - 1.0;
        let next = term * (mu - odd * odd) / (k * 8.0 * x);
        if next.abs() > term.abs() && k > 2.0 {
            break;
        }
        term = next;
        if term.abs() < 1e-18 || k > 400.0 {
            terms.push(term);
            break;
        }
    }
    let omitted = terms.last().copied().unwrap_or(1.0).abs();
    let mut p = 0.0;
    let mut q = 0.0;
    for (i, t) in terms.iter().enumerate() {
        let sign = if (i / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if i % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
    }
    let a = x - 0.25 * PI;
    let b = 0.5 * PI * tau;
    let cosh_b = 0.5 * ((b - shift).exp() + (-b - shift).exp());
    let sinh_b = 0.5 * ((b - shift).exp() - (-b - shift).exp());
    let (sa, ca) = a.sin_cos();
    let cos_chi = Complex64::new(ca * cosh_b, sa * sinh_b);
    let sin_chi = Complex64::new(sa * cosh_b, -ca * sinh_b);
    let amplitude = (2.0 / (PI * x)).sqrt();
    let value = (cos_chi * p - sin_chi * q) * amplitude;
    Some((value, omitted * amplitude * cosh_b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_agree_where_they_overlap() {
        for tau in [0.0, 0.7, 2.0, 6.0] {
            for x in [6.0, 8.0] {
                let (s, _) = series(tau, x, 0.0);
                let (m, _) = miller(tau, x, 0.0);
                assert!(
                    (s - m).norm() < 1e-13 * envelope(tau, x, 0.0),
                    "tau={tau} x={x}"
                );
            }
            for x in [25.0, 40.0] {
                let (h, err) = hankel(tau, x, 0.0).unwrap();
                assert!(err < 1e-14 * envelope(tau, x, 0.0));
                let (m, _) = miller(tau, x, 0.0);
                assert!(
                    (h - m).norm() < 1e-13 * envelope(tau, x, 0.0),
                    "tau={tau} x={x}"
                );
            }
        }
    }

    #[test]
    fn j0_first_zero() {
        let j = bessel_j_imag(Order::new(0.0).unwrap(), 2.404_825_557_695_773).unwrap();
        assert!(j.re.abs() < 1e-15);
        assert_eq!(j.im, 0.0);
    }

    #[test]
    fn negated_order_gives_conjugate() {
        for tau in [0.4, 1.0, 3.0, 9.0] {
            for x in [0.5, 5.0, 12.0, 35.0] {
                let a = j_shifted(tau, x, 0.0).unwrap();
                let b = j_shifted(-tau, x, 0.0).unwrap().conj();
                assert!(
                    (a - b).norm() <= 1e-13 * envelope(tau, x, 0.0),
                    "tau={tau} x={x}"
                );
            }
        }
    }

    #[test]
    fn scaled_matches_unscaled() {
        let tau = 7.0;
        for x in [0.3, 4.0, 15.0, 60.0] {
            let plain = bessel_j_imag(Order::new(tau).unwrap(), x).unwrap();
            let scaled = bessel_j_imag_scaled(Order::new(tau).unwrap(), x).unwrap();
            let back = scaled * (0.5 * PI * tau).exp();
            assert!(
                (back - plain).norm() < 1e-13 * envelope(tau, x, 0.0),
                "x={x}"
            );
        }
    }
}
