//! The integration layer on its own: finite ranges, half-lines with a decay
//! hint, a vertical contour and a truncated series.
//!
//! cargo run --example quadrature

use std::f64::consts::PI;

use index_transforms::quad::{
    integrate_contour, integrate_finite, integrate_semi_infinite, sum_series, DecayHint, Tolerance,
    TruncationPolicy,
};
use index_transforms::specfun::complex_gamma;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::new(1e-12, 1e-12, 1_000_000)?;

    let r = integrate_finite(|x: f64| x.ln(), 0.0, 1.0, &tol)?;
    println!(
        "int_0^1 ln x dx        = {:.15} (err {:.1e}, {} evals)",
        r.value, r.error_estimate, r.evaluations
    );

    let r = integrate_semi_infinite(
        |x: f64| (-x).exp() * x.cos(),
        DecayHint::Exponential(1.0),
        &tol,
    )?;
    println!("int_0^inf e^-x cos x   = {:.15} (exact 0.5)", r.value);

    let r = integrate_semi_infinite(
        |x: f64| 1.0 / (1.0 + x * x),
        DecayHint::Algebraic(2.0),
        &tol,
    )?;
    println!(
        "int_0^inf 1/(1+x^2)    = {:.15} (exact {:.15})",
        r.value,
        PI / 2.0
    );

    // (1/2πi) ∫ Γ(s) x^{-s} ds on Re s = 1 gives e^{-x}.
    let x: f64 = 2.0;
    let c = integrate_contour(|s| Ok(complex_gamma(s)? * (-s * x.ln()).exp()), 1.0, &tol)?;
    println!(
        "Mellin-Barnes for e^-2 = {:.15} (exact {:.15}), half-length {}",
        c.value.re,
        (-x).exp(),
        c.half_length
    );

    // Tail of Σ 1/n⁴ past n is below 1/(3n³).
    let bound = |n: i64| 1.0 / (3.0 * (n as f64).powi(3));
    let s = sum_series(
        |n| 1.0 / (n as f64).powi(4),
        1,
        &TruncationPolicy::TailBound {
            bound: &bound,
            tol: 1e-12,
            max_terms: 1_000_000,
        },
    )?;
    println!(
        "sum 1/n^4              = {:.15} (exact {:.15}), {} terms",
        s.value,
        PI.powi(4) / 90.0,
        s.evaluations
    );
    Ok(())
}
