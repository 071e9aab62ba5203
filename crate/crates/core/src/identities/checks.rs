use std::f64::consts::PI;

use num_complex::Complex64;

use super::{IdentityId, IdentityParams, Side};
use crate::error::{Error, Result};
use crate::quad::{
    integrate_contour_beyond, try_integrate_semi_infinite, try_integrate_semi_infinite_split,
    DecayHint, QuadratureResult, Tolerance,
};
use crate::specfun::{
    bessel_i_imag, bessel_i_imag_scaled, bessel_j_imag_scaled, bessel_k_imag, bessel_k_imag_scaled,
    exp_scaled_e1, ln_complex_gamma, Order, TAU_MAX,
};
use crate::transforms::JK_DECAY_RATE;

const N_MAX: i64 = 8;
const TAU_RANGE: (f64, f64) = (0.0, 8.0);
const X_RANGE: (f64, f64) = (0.25, 8.0);
const U_RANGE: (f64, f64) = (0.25, 3.0);
const D29_N_MAX: i64 = 100_000;
/// Below this distance from a multiple of 2π the Dirichlet quotient is
/// replaced by its limit.
const D29_LIMIT_GAP: f64 = 1e-8;
pub(crate) const MB18_GAMMA: f64 = 0.25;
pub(crate) const MB_JK_GAMMA: f64 = 0.5;

pub(crate) fn is_inequality(id: IdentityId) -> bool {
    matches!(id, IdentityId::INEQ16 | IdentityId::INEQ17)
}

fn required<T>(v: Option<T>, name: &'static str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("missing parameter '{name}'")))
}

fn within(name: &'static str, v: f64, lo: f64, hi: f64, expected: &'static str) -> Result<f64> {
    if v.is_finite() && v >= lo && v <= hi {
        Ok(v)
    } else {
        Err(Error::Domain {
            name,
            value: v,
            expected,
        })
    }
}

fn index(p: &IdentityParams) -> Result<i64> {
    let n = required(p.n, "n")?;
    if (1..=N_MAX).contains(&n) {
        Ok(n)
    } else {
        Err(Error::Domain {
            name: "n",
            value: n as f64,
            expected: "1 <= n <= 8",
        })
    }
}

fn tau(p: &IdentityParams) -> Result<f64> {
    let t = required(p.tau, "tau")?;
    if t > TAU_RANGE.0 && t <= TAU_RANGE.1 {
        Ok(t)
    } else {
        Err(Error::Domain {
            name: "tau",
            value: t,
            expected: "0 < tau <= 8",
        })
    }
}

fn angle(p: &IdentityParams) -> Result<f64> {
    let u = required(p.u, "u")?;
    within("|u|", u.abs(), U_RANGE.0, U_RANGE.1, "0.25 <= |u| <= 3")?;
    Ok(u)
}

fn argument(p: &IdentityParams) -> Result<f64> {
    within(
        "x",
        required(p.x, "x")?,
        X_RANGE.0,
        X_RANGE.1,
        "0.25 <= x <= 8",
    )
}

fn line(p: &IdentityParams, default: f64, lo: f64, hi: f64, expected: &'static str) -> Result<f64> {
    let g = p.gamma.unwrap_or(default);
    if g.is_finite() && g > lo && g < hi {
        Ok(g)
    } else {
        Err(Error::Domain {
            name: "gamma",
            value: g,
            expected,
        })
    }
}

fn inequality_point(p: &IdentityParams) -> Result<(f64, f64)> {
    let tau = required(p.tau, "tau")?;
    let x = required(p.x, "x")?;
    if !(tau > 0.0 && tau <= TAU_MAX) {
        return Err(Error::Domain {
            name: "tau",
            value: tau,
            expected: "0 < tau <= 20",
        });
    }
    if !(x > 0.0 && x <= 700.0) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            expected: "0 < x <= 700",
        });
    }
    Ok((tau, x))
}

pub(crate) fn validate(id: IdentityId, p: &IdentityParams) -> Result<()> {
    match id {
        IdentityId::I19 | IdentityId::I27 => {
            tau(p)?;
            argument(p)?;
        }
        IdentityId::I20 | IdentityId::I23 | IdentityId::I28 | IdentityId::I29 => {
            index(p)?;
            angle(p)?;
        }
        IdentityId::I22 => {
            angle(p)?;
            within(
                "t",
                required(p.t, "t")?,
                X_RANGE.0,
                X_RANGE.1,
                "0.25 <= t <= 8",
            )?;
        }
        IdentityId::D29 => {
            let n = required(p.big_n, "N")?;
            if !(0..=D29_N_MAX).contains(&n) {
                return Err(Error::Domain {
                    name: "N",
                    value: n as f64,
                    expected: "0 <= N <= 100000",
                });
            }
            within("t", required(p.t, "t")?, -1e6, 1e6, "|t| <= 1e6")?;
            within("u", required(p.u, "u")?, -1e6, 1e6, "|u| <= 1e6")?;
        }
        IdentityId::MB18 => {
            tau(p)?;
            argument(p)?;
            line(p, MB18_GAMMA, 0.0, 0.5, "0 < gamma < 1/2")?;
        }
        IdentityId::MB25 | IdentityId::MB26 => {
            tau(p)?;
            argument(p)?;
            line(p, MB_JK_GAMMA, 0.0, f64::INFINITY, "gamma > 0")?;
        }
        IdentityId::INEQ16 => {
            inequality_point(p)?;
        }
        IdentityId::INEQ17 => {
            inequality_point(p)?;
            let a = required(p.constant, "constant")?;
            within("constant", a, f64::MIN_POSITIVE, f64::MAX, "A > 0")?;
        }
    }
    Ok(())
}

fn side(q: QuadratureResult) -> Side {
    Side {
        value: q.value,
        imag: 0.0,
        evaluations: q.evaluations,
        converged: q.converged,
    }
}

fn scaled(side: Side, factor: f64) -> Side {
    Side {
        value: side.value * factor,
        imag: side.imag * factor,
        ..side
    }
}

fn order(tau: f64) -> Result<Order> {
    Order::new(tau)
}

/// `Re J_{iτ}(y) K_{iτ}(y) / cosh(πτ/2)` or `Im J_{iτ}(y) K_{iτ}(y) / sinh(πτ/2)`
/// at `y = 2√(2t)`, built from `e^{-πτ/2} J_{iτ}` so nothing overflows.
fn jk_normalized(tau: f64, t: f64, imaginary: bool) -> Result<f64> {
    let o = order(tau)?;
    let y = 2.0 * (2.0 * t).sqrt();
    let k = bessel_k_imag(o, y)?.value;
    if k == 0.0 {
        return Ok(0.0);
    }
    let j = bessel_j_imag_scaled(o, y)?;
    let e = (-PI * tau).exp();
    Ok(if imaginary {
        j.im * k * 2.0 / (1.0 - e)
    } else {
        j.re * k * 2.0 / (1.0 + e)
    })
}

pub(crate) fn evaluate(
    id: IdentityId,
    p: &IdentityParams,
    tol: &Tolerance,
) -> Result<(Side, Side)> {
    match id {
        IdentityId::I19 => i19(tau(p)?, argument(p)?, tol),
        IdentityId::I20 => i20(index(p)?, angle(p)?, tol),
        IdentityId::I22 => i22(angle(p)?, required(p.t, "t")?, tol),
        IdentityId::I23 => i23(index(p)?, angle(p)?, tol),
        IdentityId::I27 => i27(tau(p)?, argument(p)?, tol),
        IdentityId::I28 => i28(index(p)?, angle(p)?, tol),
        IdentityId::I29 => i29(index(p)?, angle(p)?, tol),
        IdentityId::D29 => Ok(d29(
            required(p.big_n, "N")?,
            required(p.t, "t")?,
            required(p.u, "u")?,
        )),
        IdentityId::MB18 => mb18(
            tau(p)?,
            argument(p)?,
            line(p, MB18_GAMMA, 0.0, 0.5, "")?,
            tol,
        ),
        IdentityId::MB25 => mb_jk(
            tau(p)?,
            argument(p)?,
            line(p, MB_JK_GAMMA, 0.0, f64::INFINITY, "")?,
            false,
            tol,
        ),
        IdentityId::MB26 => mb_jk(
            tau(p)?,
            argument(p)?,
            line(p, MB_JK_GAMMA, 0.0, f64::INFINITY, "")?,
            true,
            tol,
        ),
        IdentityId::INEQ16 => {
            let (tau, x) = inequality_point(p)?;
            ineq16(tau, x)
        }
        IdentityId::INEQ17 => {
            let (tau, x) = inequality_point(p)?;
            ineq17(tau, x, required(p.constant, "constant")?)
        }
    }
}

/// `K_{iτ}(x/2)` against `e^{-x/2} ∫_0^∞ e^{-t/2} Re I_{iτ}(t/2) / (x+t) dt`.
/// The integrand decays like `t^{-3/2}`.
fn i19(tau: f64, x: f64, tol: &Tolerance) -> Result<(Side, Side)> {
    let o = order(tau)?;
    let lhs = bessel_k_imag(o, 0.5 * x)?.value;
    let q = try_integrate_semi_infinite(
        |t| Ok(bessel_i_imag_scaled(o, 0.5 * t)?.re / (x + t)),
        DecayHint::Algebraic(1.5),
        &tol.split_abs((-0.5 * x).exp()),
    )?;
    Ok((Side::exact(lhs), scaled(side(q), (-0.5 * x).exp())))
}

fn sin_ratio(n: i64, u: f64) -> f64 {
    (n as f64 * u).sin() / u.sinh()
}

/// `∫_0^∞ e^{-x cosh u} K_{in}(x) dx` against `π sin(nu) / (sinh u sinh(πn))`.
fn i20(n: i64, u: f64, tol: &Tolerance) -> Result<(Side, Side)> {
    let o = order(n as f64)?;
    let rate = 1.0 + u.cosh();
    let q = try_integrate_semi_infinite(
        |x| Ok((-rate * x).exp() * bessel_k_imag_scaled(o, x)?),
        DecayHint::Exponential(rate),
        tol,
    )?;
    let rhs = PI * sin_ratio(n, u) / (PI * n as f64).sinh();
    Ok((side(q), Side::exact(rhs)))
}

/// `∫_0^∞ e^{-x(1+cosh u)} / (2x+t) dx` against `g(t cosh²(u/2)) / 2`.
fn i22(u: f64, t: f64, tol: &Tolerance) -> Result<(Side, Side)> {
    let rate = 1.0 + u.cosh();
    let q = try_integrate_semi_infinite(
        |x| Ok((-rate * x).exp() / (2.0 * x + t)),
        DecayHint::Exponential(rate),
        tol,
    )?;
    let c = (0.5 * u).cosh();
    let rhs = 0.5 * exp_scaled_e1(t * c * c)?;
    Ok((side(q), Side::exact(rhs)))
}

/// `∫_0^∞ g(t cosh²(u/2)) e^{-t/2} Re I_{in}(t/2) dt` against
/// `2π sin(nu) / (sinh u sinh(πn))`.
fn i23(n: i64, u: f64, tol: &Tolerance) -> Result<(Side, Side)> {
    let o = order(n as f64)?;
    let c2 = (0.5 * u).cosh().powi(2);
    let q = try_integrate_semi_infinite(
        |t| Ok(exp_scaled_e1(t * c2)? * bessel_i_imag_scaled(o, 0.5 * t)?.re),
        DecayHint::Algebraic(1.5),
        tol,
    )?;
    let rhs = 2.0 * PI * sin_ratio(n, u) / (PI * n as f64).sinh();
    Ok((side(q), Side::exact(rhs)))
}

/// `(1/cosh(πτ/2)) ∫_0^∞ sin(xt) Re J_{iτ}(2√(2t)) K_{iτ}(2√(2t)) dt` against
/// `K_{iτ}(x) / 4`, with panel breaks at the zeros of `sin(xt)`.
fn i27(tau: f64, x: f64, tol: &Tolerance) -> Result<(Side, Side)> {
    let q = try_integrate_semi_infinite_split(
        |t| Ok((x * t).sin() * jk_normalized(tau, t, false)?),
        DecayHint::ExpSqrt(JK_DECAY_RATE),
        PI / x,
        tol,
    )?;
    let rhs = 0.25 * bessel_k_imag(order(tau)?, x)?.value;
    Ok((side(q), Side::exact(rhs)))
}

/// `∫_0^∞ t/(t²+cosh²u) Re J_{in} K_{in} dt` against
/// `π sin(nu) / (8 sinh u sinh(πn/2))`.
fn i28(n: i64, u: f64, tol: &Tolerance) -> Result<(Side, Side)> {
    let nf = n as f64;
    let c2 = u.cosh().powi(2);
    let norm = (0.5 * PI * nf).cosh();
    let q = try_integrate_semi_infinite(
        |t| Ok(t / (t * t + c2) * jk_normalized(nf, t, false)?),
        DecayHint::ExpSqrt(JK_DECAY_RATE),
        &tol.split_abs(norm),
    )?;
    let rhs = PI * sin_ratio(n, u) / (8.0 * (0.5 * PI * nf).sinh());
    Ok((scaled(side(q), norm), Side::exact(rhs)))
}

/// `∫_0^∞ 1/(t²+cosh²u) Im J_{in} K_{in} dt` against
/// `π sin(nu) / (4 sinh(2u) cosh(πn/2))`.
fn i29(n: i64, u: f64, tol: &Tolerance) -> Result<(Side, Side)> {
    let nf = n as f64;
    let c2 = u.cosh().powi(2);
    let norm = (0.5 * PI * nf).sinh();
    let q = try_integrate_semi_infinite(
        |t| Ok(jk_normalized(nf, t, true)? / (t * t + c2)),
        DecayHint::ExpSqrt(JK_DECAY_RATE),
        &tol.split_abs(norm),
    )?;
    let rhs = PI * (nf * u).sin() / (4.0 * (2.0 * u).sinh() * (0.5 * PI * nf).cosh());
    Ok((scaled(side(q), norm), Side::exact(rhs)))
}

/// `sin((2N+1)w/2) / sin(w/2)`, equal to `2N+1` at multiples of `2π`.
fn dirichlet(big_n: i64, w: f64) -> f64 {
    let m = (2 * big_n + 1) as f64;
    let r = w.rem_euclid(2.0 * PI);
    if r < D29_LIMIT_GAP || 2.0 * PI - r < D29_LIMIT_GAP {
        return m;
    }
    (0.5 * m * w).sin() / (0.5 * w).sin()
}

fn d29(big_n: i64, t: f64, u: f64) -> (Side, Side) {
    let mut lhs = 0.0;
    for n in 1..=big_n {
        let n = n as f64;
        lhs += (n * t).sin() * (n * u).sin();
    }
    let rhs = 0.25 * (dirichlet(big_n, u - t) - dirichlet(big_n, u + t));
    (Side::exact(lhs), Side::exact(rhs))
}

/// The gamma ratios peak near `|Im s| = τ`, so the line is never cut short
/// of `τ + 4`.
fn contour_side(
    ln_g: impl Fn(Complex64) -> Result<Complex64>,
    gamma: f64,
    tau: f64,
    factor: f64,
    tol: &Tolerance,
) -> Result<Side> {
    let r = integrate_contour_beyond(
        |s| Ok(ln_g(s)?.exp()),
        gamma,
        tau + 4.0,
        &tol.split_abs(factor.abs()),
    )?;
    Ok(Side {
        value: r.value.re * factor,
        imag: r.value.im * factor,
        evaluations: r.evaluations,
        converged: r.converged,
    })
}

/// `(1/2πi) ∫ Γ(1/2-s) Γ(s+iτ) Γ(s-iτ) / (Γ(s) Γ(1-s)) x^{-s} ds` against
/// `(√π / cosh πτ) e^{-x/2} Re I_{iτ}(x/2)`.
fn mb18(tau: f64, x: f64, gamma: f64, tol: &Tolerance) -> Result<(Side, Side)> {
    let it = Complex64::new(0.0, tau);
    let ln_x = x.ln();
    let one = Complex64::new(1.0, 0.0);
    let lhs = contour_side(
        |s| {
            Ok(
                ln_complex_gamma(0.5 - s)? + ln_complex_gamma(s + it)? + ln_complex_gamma(s - it)?
                    - ln_complex_gamma(s)?
                    - ln_complex_gamma(one - s)?
                    - s * ln_x,
            )
        },
        gamma,
        tau,
        1.0,
        tol,
    )?;
    let re_i = bessel_i_imag(order(tau)?, 0.5 * x)?.re;
    let rhs = PI.sqrt() / (PI * tau).cosh() * (-0.5 * x).exp() * re_i;
    Ok((lhs, Side::exact(rhs)))
}

/// Contour forms of the `J·K` kernels:
/// `Re J K / cosh(πτ/2) = (1/16π√π i) ∫ Γ((1+s)/2) Γ((s+iτ)/2) Γ((s-iτ)/2) / Γ(1-s/2) x^{-s} ds`,
/// `Im J K / sinh(πτ/2) = -(1/16π√π i) ∫ Γ(s/2) Γ((s+iτ)/2) Γ((s-iτ)/2) / Γ((1-s)/2) x^{-s} ds`.
fn mb_jk(tau: f64, x: f64, gamma: f64, imaginary: bool, tol: &Tolerance) -> Result<(Side, Side)> {
    let it = Complex64::new(0.0, tau);
    let ln_x = x.ln();
    // (1/(16π√π i)) ∫ ds = (1/(8√π)) (1/(2πi)) ∫ ds
    let factor = if imaginary { -1.0 } else { 1.0 } / (8.0 * PI.sqrt());
    let lhs = contour_side(
        |s| {
            let common =
                ln_complex_gamma(0.5 * (s + it))? + ln_complex_gamma(0.5 * (s - it))? - s * ln_x;
            Ok(if imaginary {
                common + ln_complex_gamma(0.5 * s)? - ln_complex_gamma(0.5 * (1.0 - s))?
            } else {
                common + ln_complex_gamma(0.5 * (1.0 + s))? - ln_complex_gamma(1.0 - 0.5 * s)?
            })
        },
        gamma,
        tau,
        factor,
        tol,
    )?;
    let rhs = jk_normalized(tau, x, imaginary)?;
    Ok((lhs, Side::exact(rhs)))
}

fn ineq16(tau: f64, x: f64) -> Result<(Side, Side)> {
    let lhs = bessel_i_imag(order(tau)?, x)?.norm();
    let i0 = bessel_i_imag(order(0.0)?, x)?.re;
    let rhs = i0 * ((PI * tau).sinh() / (PI * tau)).sqrt();
    Ok((Side::exact(lhs), Side::exact(rhs)))
}

fn ineq17(tau: f64, x: f64, a: f64) -> Result<(Side, Side)> {
    let lhs = bessel_k_imag(order(tau)?, x)?.value.abs();
    let rhs = a * x.powf(-0.25) / (PI * tau).sinh().sqrt();
    Ok((Side::exact(lhs), Side::exact(rhs)))
}

/// `|K_{iτ}(x)| x^{1/4} √sinh(πτ)`, the smallest admissible `A` at one point.
pub(crate) fn ineq17_ratio(tau: f64, x: f64) -> Result<f64> {
    let k = bessel_k_imag(order(tau)?, x)?.value.abs();
    Ok(k * x.powf(0.25) * (PI * tau).sinh().sqrt())
}
