use std::f64::consts::PI;

use super::{bessel_i, check_positive, Order, EULER_GAMMA};
use crate::error::{Error, Result};

const CF2_MAX_ITER: usize = 20_000;

/// Value of `K_{iτ}(x)`; `underflow` is set when the true value is nonzero but
/// below the binary64 range and `value` was flushed to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KValue {
    pub value: f64,
    pub underflow: bool,
}

/// Macdonald function `K_{iτ}(x)`, real for real `τ` and `x > 0`.
pub fn bessel_k_imag(order: Order, x: f64) -> Result<KValue> {
    let scaled = bessel_k_imag_scaled(order, x)?;
    let value = scaled * (-x).exp();
    let underflow = scaled != 0.0 && (value == 0.0 || !value.is_normal());
    Ok(KValue {
        value: if underflow { 0.0 } else { value },
        underflow,
    })
}

/// `e^{x} K_{iτ}(x)`.
///
/// Small arguments (`x <= max(2, τ/2)`) use the connection formula
/// `K_{iτ}(x) = -π Im I_{iτ}(x) / sinh(πτ)`, or the logarithmic series at
/// `τ = 0` where that formula is `0/0`. Larger arguments use Steed's
/// continued fraction, which avoids the `e^{2x}` cancellation the series
/// suffers from there.
pub fn bessel_k_imag_scaled(order: Order, x: f64) -> Result<f64> {
    check_positive("x", x)?;
    let tau = order.tau();
    if x > 2.0f64.max(0.5 * tau) {
        if let Some(v) = steed_scaled(tau, x) {
            return Ok(v);
        }
        if x > 40.0 {
            return Err(Error::AccuracyLoss {
                estimate: f64::INFINITY,
                limit: 1e-8,
            });
        }
    }
    if tau == 0.0 {
        return Ok(k0_series(x) * x.exp());
    }
    let im = bessel_i::series_scaled(tau, x).im;
    Ok(-PI * im * (2.0 * x).exp() / (PI * tau).sinh())
}

fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 1.0;
    let mut tail = 0.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * k);
        harmonic += 1.0 / k;
        i0 += term;
        tail += term * harmonic;
        if term * harmonic < 1e-17 * tail.abs().max(1e-300) {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

/// Steed's algorithm (Temme's CF2) for `e^{x} K_μ(x)` with `μ² = -τ²`,
/// so every quantity stays real.
fn steed_scaled(tau: f64, x: f64) -> Option<f64> {
    let a1 = 0.25 + tau * tau;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..CF2_MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if !s.is_finite() {
            return None;
        }
        if (dels / s).abs() < 1e-16 {
            return Some((PI / (2.0 * x)).sqrt() / s);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k0_classical_values() {
        // K_0(1), K_0(2.5), K_0(10)
        let cases = [
            (1.0, 0.421_024_438_240_708_33),
            (2.5, 0.062_347_553_200_366_186),
            (10.0, 1.778_006_231_616_765_2e-5),
        ];
        for (x, exact) in cases {
            let v = bessel_k_imag(Order::new(0.0).unwrap(), x).unwrap().value;
            assert!((v / exact - 1.0).abs() < 1e-14, "x={x} v={v}");
        }
    }

    #[test]
    fn series_and_continued_fraction_overlap() {
        for tau in [0.0, 0.5, 1.0, 3.0] {
            for x in [2.5, 3.5] {
                let cf = steed_scaled(tau, x).unwrap();
                let series = if tau == 0.0 {
                    k0_series(x) * x.exp()
                } else {
                    -PI * bessel_i::series_scaled(tau, x).im * (2.0 * x).exp() / (PI * tau).sinh()
                };
                assert!((cf - series).abs() < 1e-12 * cf.abs(), "tau={tau} x={x}");
            }
        }
    }

    #[test]
    fn underflow_is_flagged_not_an_error() {
        let k = bessel_k_imag(Order::new(1.0).unwrap(), 800.0).unwrap();
        assert_eq!(k.value, 0.0);
        assert!(k.underflow);
        let k = bessel_k_imag(Order::new(1.0).unwrap(), 5.0).unwrap();
        assert!(!k.underflow);
    }
}
