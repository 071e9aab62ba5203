use super::EULER_GAMMA;
use crate::error::{Error, Result};

/// `g(z) = e^z E_1(z) = e^z Γ(0, z)` for real `z > 0`.
///
/// Satisfies `1/(z+1) < g(z) < 1/z` and `g(z) ~ 1/z` as `z → ∞`.
pub fn exp_scaled_e1(z: f64) -> Result<f64> {
    if !(z > 0.0) || z.is_nan() {
        return Err(Error::Domain {
            name: "z",
            value: z,
            expected: "> 0",
        });
    }
    if z.is_infinite() {
        return Ok(0.0);
    }
    if z <= 1.0 {
        Ok(z.exp() * e1_series(z))
    } else {
        Ok(continued_fraction(z))
    }
}

// E_1(z) = -γ - ln z - Σ_{k≥1} (-z)^k / (k k!)
fn e1_series(z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..200 {
        let kf = f64::from(k);
        term *= -z / kf;
        let add = term / kf;
        sum += add;
        if add.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

// Modified Lentz on the even contraction of the Laguerre continued fraction.
fn continued_fraction(z: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = z + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let fi = f64::from(i);
        let an = -fi * fi;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive() {
        for z in [0.0, -1.0, f64::NAN] {
            assert!(exp_scaled_e1(z).is_err());
        }
    }

    #[test]
    fn reference_values() {
        // e^z E_1(z)
        let cases = [
            (0.01, 4.078_511_443_456_425_8),
            (1.0, 0.596_347_362_323_194_07),
            (5.0, 0.170_422_176_284_732_2),
        ];
        for (z, exact) in cases {
            let g = exp_scaled_e1(z).unwrap();
            assert!((g / exact - 1.0).abs() < 1e-14, "z={z} g={g}");
        }
    }

    #[test]
    fn branches_agree_at_the_switch() {
        let below = 1.0f64.exp() * e1_series(1.0);
        let above = continued_fraction(1.0);
        assert!((below - above).abs() < 1e-14);
    }
}
