use super::adaptive::integrate_breaks;
use super::{QuadratureResult, Tolerance};
use crate::error::{Error, Result};

/// Known tail envelope of an integrand on `(0, ∞)`, up to a constant factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayHint {
    /// `|f(x)| ≲ C e^{-rate·x}`
    Exponential(f64),
    /// `|f(x)| ≲ C e^{-rate·√x}`
    ExpSqrt(f64),
    /// `|f(x)| ≲ C x^{-power}`, `power > 1`
    Algebraic(f64),
}

impl DecayHint {
    fn validate(&self) -> Result<()> {
        let (name, v, ok) = match *self {
            DecayHint::Exponential(r) => ("rate", r, r > 0.0),
            DecayHint::ExpSqrt(r) => ("rate", r, r > 0.0),
            DecayHint::Algebraic(p) => ("power", p, p > 1.0),
        };
        if ok && v.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain {
                name,
                value: v,
                expected: "rate > 0 or power > 1",
            })
        }
    }

    fn envelope(&self, x: f64) -> f64 {
        match *self {
            DecayHint::Exponential(r) => (-r * x).exp(),
            DecayHint::ExpSqrt(r) => (-r * x.sqrt()).exp(),
            DecayHint::Algebraic(p) => x.powf(-p),
        }
    }

    /// `∫_X^∞` of the envelope.
    fn tail(&self, x: f64) -> f64 {
        match *self {
            DecayHint::Exponential(r) => (-r * x).exp() / r,
            DecayHint::ExpSqrt(r) => {
                let s = x.sqrt();
                2.0 * (-r * s).exp() * (s / r + 1.0 / (r * r))
            }
            DecayHint::Algebraic(p) => x.powf(1.0 - p) / (p - 1.0),
        }
    }

    fn start(&self) -> f64 {
        match *self {
            DecayHint::Exponential(r) => 2.0 / r,
            DecayHint::ExpSqrt(r) => (4.0 / r).powi(2),
            DecayHint::Algebraic(_) => ALGEBRAIC_SPLIT,
        }
    }
}

const AMPLITUDE_SAMPLES: usize = 16;
const MAX_DOUBLINGS: usize = 60;
const MAX_BREAKS: usize = 100_000;
/// Where an algebraic tail hands over to the mapped integral.
const ALGEBRAIC_SPLIT: f64 = 1.0;

/// Largest `|f(x)| / envelope(x)` over a fixed set of points in `[x/2, x]`.
fn amplitude<F>(f: &mut F, hint: &DecayHint, x: f64) -> Result<(f64, u64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut c = 0.0f64;
    for k in 0..AMPLITUDE_SAMPLES {
        let t = x * (0.5 + 0.5 * (k as f64 + 0.5) / AMPLITUDE_SAMPLES as f64);
        let v = f(t)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: t });
        }
        let env = hint.envelope(t);
        if env > 0.0 {
            c = c.max(v.abs() / env);
        }
    }
    Ok((c, AMPLITUDE_SAMPLES as u64))
}

/// `∫_0^∞ f(x) dx`.
///
/// For exponential hints the range is truncated at the first `X` (doubling
/// from a hint-dependent start) where the fitted envelope tail
/// `C·∫_X^∞ env` drops below `abs_tol/2`; `C` is the largest observed
/// `|f|/env` on `[X/2, X]`. The tail bound is added to the error estimate.
///
/// For `Algebraic(p)` truncation would need an enormous `X`, so the tail
/// `[X, ∞)` is mapped onto `(0, 1]` with `x = X s^{-1/(p-1)}`, which turns a
/// pure `x^{-p}` tail into a constant.
pub fn integrate_semi_infinite<F>(
    f: F,
    decay: DecayHint,
    tol: &Tolerance,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    try_integrate_semi_infinite(|x| Ok(f(x)), decay, tol)
}

/// [`integrate_semi_infinite`] for fallible integrands.
pub fn try_integrate_semi_infinite<F>(
    f: F,
    decay: DecayHint,
    tol: &Tolerance,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    semi_infinite(f, decay, None, tol)
}

/// Like [`try_integrate_semi_infinite`], with panel breaks forced at every
/// multiple of `spacing` (the zeros of an oscillatory factor such as
/// `sin(πx/spacing)`).
pub fn try_integrate_semi_infinite_split<F>(
    f: F,
    decay: DecayHint,
    spacing: f64,
    tol: &Tolerance,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::Domain {
            name: "spacing",
            value: spacing,
            expected: "finite and > 0",
        });
    }
    semi_infinite(f, decay, Some(spacing), tol)
}

fn breaks(upper: f64, spacing: Option<f64>) -> Vec<f64> {
    let mut b = vec![0.0];
    if let Some(h) = spacing {
        let count = ((upper / h).floor() as usize).min(MAX_BREAKS);
        for k in 1..=count {
            let x = k as f64 * h;
            if x < upper {
                b.push(x);
            }
        }
    }
    b.push(upper);
    b
}

fn semi_infinite<F>(
    mut f: F,
    decay: DecayHint,
    spacing: Option<f64>,
    tol: &Tolerance,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    decay.validate()?;
    if let DecayHint::Algebraic(p) = decay {
        return algebraic(f, p, spacing, tol);
    }
    let half = tol.split_abs(2.0);
    let mut upper = decay.start();
    let mut evals = 0u64;
    let (mut c, n) = amplitude(&mut f, &decay, upper)?;
    evals += n;
    let mut previous: Option<(f64, f64)> = None;
    let mut doublings = 0;
    while c * decay.tail(upper) > half.abs_tol() && doublings < MAX_DOUBLINGS {
        previous = Some((upper, c));
        upper *= 2.0;
        let (cn, n) = amplitude(&mut f, &decay, upper)?;
        c = cn;
        evals += n;
        doublings += 1;
    }
    let tail = c * decay.tail(upper);
    let budget = tol.max_evals().saturating_sub(evals);
    let body = integrate_breaks(
        &mut f,
        &breaks(upper, spacing),
        &half.with_max_evals(budget),
    )?;
    evals += body.evaluations;

    // The last doubling's panel must not exceed what the envelope fitted one
    // step earlier predicted for the whole tail.
    let mut hint_violated = doublings == MAX_DOUBLINGS;
    if let Some((prev_upper, prev_c)) = previous {
        let check_tol = Tolerance {
            rel_tol: 1e-3,
            max_evals: 2_000,
            ..half
        };
        let last = integrate_breaks(&mut f, &[prev_upper, upper], &check_tol)?;
        evals += last.evaluations;
        let predicted = prev_c * decay.tail(prev_upper);
        if last.value.abs() > 10.0 * predicted && last.value.abs() > half.abs_tol() {
            hint_violated = true;
        }
    }

    let error_estimate = body.error_estimate + tail;
    let converged = body.converged && !hint_violated && error_estimate <= tol.target(body.value);
    Ok(QuadratureResult {
        value: body.value,
        error_estimate,
        evaluations: evals,
        converged,
        hint_violated,
    })
}

fn algebraic<F>(
    mut f: F,
    power: f64,
    spacing: Option<f64>,
    tol: &Tolerance,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let half = tol.split_abs(2.0);
    let split = ALGEBRAIC_SPLIT;
    let q = 1.0 / (power - 1.0);
    let mut evals = 0u64;

    // Growth of |f|·x^p far out means the declared power is too optimistic.
    let hint = DecayHint::Algebraic(power);
    let (near, n1) = amplitude(&mut f, &hint, 1e3 * split)?;
    let (far, n2) = amplitude(&mut f, &hint, 1e6 * split)?;
    evals += n1 + n2;
    let hint_violated = far > 10.0 * near && far > 0.0;

    // The pieces can cancel, so a relative target on each piece is no
    // guide to the total. While a pass misses the overall target, the pieces
    // are redone against an absolute share of it.
    let mut piece_tol = half;
    let mut pass = 0;
    loop {
        // Half the remaining budget each, so neither piece starves the other.
        let budget = tol.max_evals().saturating_sub(evals) / 2;
        let head = integrate_breaks(
            &mut f,
            &breaks(split, spacing),
            &piece_tol.with_max_evals(budget),
        )?;
        evals += head.evaluations;
        let budget = tol.max_evals().saturating_sub(evals);
        let tail = integrate_breaks(
            |s: f64| {
                let x = split * s.powf(-q);
                Ok(f(x)? * q * x / s)
            },
            &[0.0, 0.5, 1.0],
            &piece_tol.with_max_evals(budget),
        )?;
        evals += tail.evaluations;
        let value = head.value + tail.value;
        let error_estimate = head.error_estimate + tail.error_estimate;
        let target = tol.target(value);
        pass += 1;
        if error_estimate > target && head.converged && tail.converged && pass < 3 {
            // Aim at the smallest total the current error bar allows.
            let floor = tol.target((value.abs() - error_estimate).max(0.0));
            piece_tol = Tolerance {
                abs_tol: 0.5 * floor,
                rel_tol: f64::MIN_POSITIVE,
                ..*tol
            };
            continue;
        }
        return Ok(QuadratureResult {
            value,
            error_estimate,
            evaluations: evals,
            converged: head.converged
                && tail.converged
                && !hint_violated
                && error_estimate <= target,
            hint_violated,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::new(1e-13, 1e-13, 1_000_000).unwrap()
    }

    #[test]
    fn exponential() {
        let r = integrate_semi_infinite(|t: f64| (-t).exp(), DecayHint::Exponential(1.0), &tol())
            .unwrap();
        assert!(r.converged && !r.hint_violated);
        assert!((r.value - 1.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn stieltjes_weight() {
        let u = 1.0f64;
        let rate = 1.0 + u.cosh();
        let r = integrate_semi_infinite(
            |y: f64| (-y * rate).exp(),
            DecayHint::Exponential(rate),
            &tol(),
        )
        .unwrap();
        assert!((r.value - 1.0 / rate).abs() < 1e-12);
    }

    #[test]
    fn exp_sqrt_with_endpoint_singularity() {
        let rate = 2.0 * 2f64.sqrt();
        let r = integrate_semi_infinite(
            |t: f64| (-rate * t.sqrt()).exp() / t.sqrt(),
            DecayHint::ExpSqrt(rate),
            &Tolerance::new(1e-11, 1e-11, 1_000_000).unwrap(),
        )
        .unwrap();
        assert!(!r.hint_violated);
        assert!((r.value - 0.5f64.sqrt()).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn algebraic_tail_is_mapped() {
        // ∫_0^∞ dx / (1+x)^{3/2} = 2
        let r = integrate_semi_infinite(
            |x: f64| (1.0 + x).powf(-1.5),
            DecayHint::Algebraic(1.5),
            &tol(),
        )
        .unwrap();
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn slow_decay_is_flagged() {
        let r = integrate_semi_infinite(
            |x: f64| 1.0 / (1.0 + x * x),
            DecayHint::Exponential(1.0),
            &tol(),
        )
        .unwrap();
        assert!(r.hint_violated);
        assert!(!r.converged);
        let r = integrate_semi_infinite(
            |x: f64| 1.0 / (1.0 + x).sqrt().powi(3) * (1.0 + x).sqrt(),
            DecayHint::Algebraic(1.5),
            &tol(),
        )
        .unwrap();
        assert!(r.hint_violated);
    }

    #[test]
    fn zero_splitting() {
        // ∫_0^∞ sin(3t) e^{-t} dt = 3/10
        let x = 3.0;
        let r = try_integrate_semi_infinite_split(
            |t: f64| Ok((x * t).sin() * (-t).exp()),
            DecayHint::Exponential(1.0),
            std::f64::consts::PI / x,
            &tol(),
        )
        .unwrap();
        assert!((r.value - 0.3).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn invalid_hints() {
        assert!(integrate_semi_infinite(|x| x, DecayHint::Algebraic(1.0), &tol()).is_err());
        assert!(integrate_semi_infinite(|x| x, DecayHint::Exponential(-1.0), &tol()).is_err());
    }
}
