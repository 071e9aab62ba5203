use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k-1)), k = 1..=10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

const STIRLING_MIN_MODULUS: f64 = 15.0;

/// `ln Γ(z)` for `Re z >= 1/2`: Stirling series, after shifting `z` upward
/// when `|z|` is small.
pub(crate) fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut shifted = z;
    let mut product = Complex64::new(1.0, 0.0);
    while shifted.norm() < STIRLING_MIN_MODULUS {
        product *= shifted;
        shifted += 1.0;
    }
    stirling(shifted) - product.ln()
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut power = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// A logarithm of `Γ(z)`. The imaginary part is not reduced to the principal
/// branch of `ln Γ`; `exp` of the result is `Γ(z)`.
pub fn ln_complex_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain {
            name: "z",
            value: if z.re.is_finite() { z.im } else { z.re },
            expected: "finite",
        });
    }
    if is_pole(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z));
    }
    // Γ(z) Γ(1-z) = π / sin(πz)
    let s = (z * PI).sin();
    Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z))
}

/// Euler's gamma function at complex argument.
pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    let lg = ln_complex_gamma(z)?;
    if lg.re > f64::MAX.ln() {
        return Err(Error::Overflow {
            what: "complex gamma",
        });
    }
    let value = lg.exp();
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow {
            what: "complex gamma",
        });
    }
    Ok(value)
}
