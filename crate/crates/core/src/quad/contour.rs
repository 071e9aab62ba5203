use std::f64::consts::PI;

use num_complex::Complex64;

use super::adaptive::adaptive;
use super::Tolerance;
use crate::error::{Error, Result};

const MAX_SHELLS: usize = 40;
const FIRST_HALF_WIDTH: f64 = 1.0;

/// Outcome of a contour integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
    /// Half-length of the truncated line.
    pub half_length: f64,
}

/// `(1/2πi) ∫_{γ-i∞}^{γ+i∞} g(s) ds = (1/2π) ∫ g(γ+it) dt`.
///
/// The line is integrated on `[-1, 1]` and then on dyadic shells
/// `±[T, 2T]` until a shell contributes less than `abs_tol/4`. If shell
/// contributions stop shrinking while still above tolerance the integrand
/// is not decaying and an error is returned.
pub fn integrate_contour<G>(g: G, gamma: f64, tol: &Tolerance) -> Result<ContourResult>
where
    G: FnMut(Complex64) -> Result<Complex64>,
{
    integrate_contour_beyond(g, gamma, FIRST_HALF_WIDTH, tol)
}

/// [`integrate_contour`] for integrands whose bulk sits away from the real
/// axis: truncation is not considered before the line reaches
/// `|t| >= min_half_length`, and shells may grow until then.
pub fn integrate_contour_beyond<G>(
    mut g: G,
    gamma: f64,
    min_half_length: f64,
    tol: &Tolerance,
) -> Result<ContourResult>
where
    G: FnMut(Complex64) -> Result<Complex64>,
{
    if !gamma.is_finite() {
        return Err(Error::Domain {
            name: "gamma",
            value: gamma,
            expected: "finite",
        });
    }
    let scale = 1.0 / (2.0 * PI);
    let mut integrand = |t: f64| g(Complex64::new(gamma, t)).map(|v| v * scale);
    // A quarter of the absolute tolerance goes to the core, halving shares
    // adding up to a half go to the shells, and the truncated tail gets the
    // last quarter.
    let piece_tol = tol.split_abs(4.0);
    let mut shell_tol = tol.split_abs(4.0);
    let mut evals = 0u64;
    let (mut value, mut error, n, mut converged) = adaptive::<Complex64, _>(
        &mut integrand,
        &[-FIRST_HALF_WIDTH, 0.0, FIRST_HALF_WIDTH],
        &piece_tol,
    )?;
    evals += n;
    let mut t = FIRST_HALF_WIDTH;
    let mut previous = f64::INFINITY;
    let mut rising = 0;
    for _ in 0..MAX_SHELLS {
        shell_tol = shell_tol.split_abs(2.0);
        let budget = tol.max_evals().saturating_sub(evals);
        let (lo, e1, n1, c1) = adaptive::<Complex64, _>(
            &mut integrand,
            &[-2.0 * t, -t],
            &shell_tol.with_max_evals(budget),
        )?;
        let budget = tol.max_evals().saturating_sub(evals + n1);
        let (hi, e2, n2, c2) = adaptive::<Complex64, _>(
            &mut integrand,
            &[t, 2.0 * t],
            &shell_tol.with_max_evals(budget),
        )?;
        evals += n1 + n2;
        let shell = lo + hi;
        value += shell;
        error += e1 + e2;
        converged &= c1 && c2;
        t *= 2.0;
        let size = shell.norm();
        let reached = t >= min_half_length;
        if size < piece_tol.abs_tol() && reached {
            error += size;
            return Ok(ContourResult {
                value,
                error_estimate: error,
                evaluations: evals,
                converged: converged && error <= tol.target(value.norm()),
                half_length: t,
            });
        }
        if size >= previous && reached {
            rising += 1;
            if rising >= 3 {
                return Err(Error::NonDecay { t, shell: size });
            }
        } else {
            rising = 0;
        }
        previous = size;
        if evals >= tol.max_evals() {
            break;
        }
    }
    Ok(ContourResult {
        value,
        error_estimate: error + previous,
        evaluations: evals,
        converged: false,
        half_length: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::new(1e-13, 1e-13, 1_000_000).unwrap()
    }

    #[test]
    fn gaussian() {
        let r = integrate_contour(
            |s| Ok(Complex64::new(-(s.im * s.im), 0.0).exp()),
            0.0,
            &tol(),
        )
        .unwrap();
        assert!(r.converged);
        assert!((r.value.re - PI.sqrt() / (2.0 * PI)).abs() < 1e-12);
        assert!(r.value.im.abs() < 1e-15);
    }

    #[test]
    fn conjugate_symmetric_integrand_is_real() {
        // g(γ+it) = e^{it - |t|} / (1 - it), so g(-t) = conj(g(t))
        let r = integrate_contour(
            |s| {
                let t = s.im;
                Ok(Complex64::new(0.0, t).exp() * (-t.abs()).exp() / Complex64::new(1.0, -t))
            },
            0.3,
            &tol(),
        )
        .unwrap();
        assert!(r.value.im.abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn inverse_mellin_of_gamma() {
        // (1/2πi)∫ Γ(s) x^{-s} ds = e^{-x}
        let x: f64 = 0.7;
        let r = integrate_contour(
            |s| Ok(crate::specfun::complex_gamma(s)? * (-s * x.ln()).exp()),
            0.5,
            &tol(),
        )
        .unwrap();
        assert!((r.value.re - (-x).exp()).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn growing_integrand_is_an_error() {
        let r = integrate_contour(|s| Ok(Complex64::new(s.im.abs(), 0.0)), 0.0, &tol());
        assert!(matches!(r, Err(Error::NonDecay { .. })));
    }
}
