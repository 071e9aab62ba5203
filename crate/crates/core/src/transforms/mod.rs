//! Synthesis, analysis and inversion for the three transform families.

mod function;
mod sequence;

pub use function::{psi_function_value, FunctionSpec, TrigPolynomial};
pub use sequence::{check_condition, CoefficientSequence, ConditionReport};

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::kernels::{forward_kernel, inverse_kernel, TransformKind};
use crate::quad::{
    try_integrate_semi_infinite, try_sum_series, CompensatedSum, DecayHint, QuadratureResult,
    Tolerance, TruncationPolicy,
};

/// Largest index the inversion formulas are evaluated at. Beyond it the
/// `sinh(πn)` factor swallows all binary64 digits of the integral.
pub const N_INVERT_MAX: i64 = 10;

/// Integrands are required to decay at least like `x^{-3/2}` when only an
/// algebraic envelope is known.
const MIN_INTEGRAND_POWER: f64 = 1.5;

/// Decay rate of the `J·K` forward kernels, `e^{-2√2·√x}`.
pub const JK_DECAY_RATE: f64 = 2.0 * SQRT_2;

/// Default tolerance for transforms. For inversions it applies to the
/// recovered coefficient, after the `sinh(πn)` amplification.
pub fn default_tolerance() -> Tolerance {
    Tolerance::new(1e-8, 1e-8, 5_000_000).expect("valid constant tolerance")
}

/// Decay of a kernel as `x → ∞`.
#[derive(Debug, Clone, Copy)]
enum KernelDecay {
    Power(f64),
    ExpSqrt(f64),
}

fn forward_decay(kind: TransformKind) -> KernelDecay {
    match kind {
        TransformKind::ReI => KernelDecay::Power(0.5),
        TransformKind::ReJK | TransformKind::ImJK => KernelDecay::ExpSqrt(JK_DECAY_RATE),
    }
}

fn inverse_decay(kind: TransformKind) -> KernelDecay {
    match kind {
        TransformKind::ReI | TransformKind::ReJK => KernelDecay::Power(1.0),
        TransformKind::ImJK => KernelDecay::Power(2.0),
    }
}

/// Envelope of `kernel · f`.
fn combine(kind: TransformKind, kernel: KernelDecay, f: DecayHint) -> Result<DecayHint> {
    let hint = match (kernel, f) {
        (KernelDecay::Power(k), DecayHint::Algebraic(p)) => DecayHint::Algebraic(p + k),
        (KernelDecay::ExpSqrt(r), DecayHint::Algebraic(_)) => DecayHint::ExpSqrt(r),
        (KernelDecay::ExpSqrt(r), DecayHint::ExpSqrt(s)) => DecayHint::ExpSqrt(r + s),
        (_, other) => other,
    };
    if let (KernelDecay::Power(k), DecayHint::Algebraic(p)) = (kernel, f) {
        if p + k < MIN_INTEGRAND_POWER {
            return Err(Error::InsufficientDecay {
                kind,
                declared: format!("{f:?}"),
                needed: MIN_INTEGRAND_POWER - k,
            });
        }
    }
    Ok(hint)
}

fn algebraic_power(hint: DecayHint) -> f64 {
    match hint {
        DecayHint::Algebraic(p) => p,
        _ => 0.0,
    }
}

/// Relative accuracy asked of inner integrals. The outer quadrature treats
/// it as the noise level of its integrand.
const INNER_REL_TOL: f64 = 1e-14;

/// Tolerance for an inner evaluation at `x`: relative accuracy near machine
/// precision plus an absolute part that follows the envelope `min(1, x^{-p})`
/// so that the inner error stays integrable in the outer integral.
fn inner_tolerance(outer: &Tolerance, x: f64, power: f64) -> Tolerance {
    let envelope = if x > 1.0 { x.powf(-power) } else { 1.0 };
    Tolerance::unchecked(
        (1e-3 * outer.abs_tol() * envelope).max(1e-300),
        INNER_REL_TOL,
        outer.max_evals().min(20_000),
    )
}

/// `Σ a_n · forward_kernel(kind, n, x)` over the stored indices.
pub fn synthesize(kind: TransformKind, a: &CoefficientSequence, x: f64) -> Result<f64> {
    a.check_kind(kind)?;
    let mut sum = CompensatedSum::default();
    for (n, an) in a.iter() {
        if an != 0.0 {
            sum.add(an * forward_kernel(kind, n, x)?);
        }
    }
    Ok(sum.value())
}

/// The synthesized function wrapped with its true tail envelope: `x^{-1/2}`
/// for `ReI`, `e^{-2√2·√x}` for the `J·K` kinds.
pub fn synthesized_function(kind: TransformKind, a: &CoefficientSequence) -> Result<FunctionSpec> {
    a.check_kind(kind)?;
    for (n, _) in a.iter() {
        kind.check_forward_index(n)?;
    }
    let decay = match kind {
        TransformKind::ReI => DecayHint::Algebraic(0.5),
        TransformKind::ReJK | TransformKind::ImJK => DecayHint::ExpSqrt(JK_DECAY_RATE),
    };
    let a = a.clone();
    Ok(FunctionSpec::fallible(
        move |x| synthesize(kind, &a, x),
        decay,
    ))
}

/// `a_n = ∫_0^∞ forward_kernel(kind, n, x) f(x) dx`.
pub fn analyze(
    kind: TransformKind,
    f: &FunctionSpec,
    n: i64,
    tol: &Tolerance,
) -> Result<QuadratureResult> {
    kind.check_forward_index(n)?;
    let f_decay = f.decay();
    let hint = combine(kind, forward_decay(kind), f_decay)?;
    let power = algebraic_power(f_decay);
    try_integrate_semi_infinite(
        |x| {
            let k = forward_kernel(kind, n, x)?;
            if k == 0.0 {
                return Ok(0.0);
            }
            Ok(k * f.eval(x, &inner_tolerance(tol, x, power))?)
        },
        hint,
        &tol.with_noise(INNER_REL_TOL),
    )
}

/// Closed-form coefficient of a ψ-generated function as stated with the
/// inversion theorems: `(2π / sinh(πn)) ∫_{-π}^{π} ψ(u) sin(nu) du`, for
/// `ReI` and `ReJK`. No closed form is stated for `ImJK`.
pub fn closed_form_coefficient(kind: TransformKind, psi: &TrigPolynomial, n: i64) -> Option<f64> {
    if n < 1 {
        return None;
    }
    match kind {
        TransformKind::ReI | TransformKind::ReJK => {
            Some(2.0 * PI / (PI * n as f64).sinh() * psi.sine_moment(n))
        }
        TransformKind::ImJK => None,
    }
}

fn amplification(kind: TransformKind, n: i64) -> f64 {
    kind.inversion_constant() * (PI * n as f64).sinh()
}

fn check_invert_index(kind: TransformKind, n: i64, tol: &Tolerance) -> Result<()> {
    if n < 1 {
        return Err(Error::IndexOutOfRange { kind, n });
    }
    if n > N_INVERT_MAX {
        let amp = amplification(kind, n);
        let quad_error = f64::EPSILON;
        return Err(Error::PrecisionLoss {
            n,
            amplification: amp,
            quad_error,
            amplified: amp * quad_error,
            requested: tol.abs_tol(),
        });
    }
    Ok(())
}

/// Recovers `a_n` from `f` with the inversion formula
/// `a_n = c · sinh(πn) ∫_0^∞ K_n(x) f(x) dx`, where `K_n` is the inversion
/// kernel and `c` is `1/π²`, `8/π²` or `4/π²`.
///
/// `tol` applies to `a_n`. The quadrature error is multiplied by the same
/// factor; if the result cannot meet `tol` a precision-loss error reports
/// the numbers.
pub fn invert_to_sequence(
    kind: TransformKind,
    f: &FunctionSpec,
    n: i64,
    tol: &Tolerance,
) -> Result<QuadratureResult> {
    check_invert_index(kind, n, tol)?;
    let amp = amplification(kind, n);
    let f_decay = f.decay();
    let hint = combine(kind, inverse_decay(kind), f_decay)?;
    let f_power = algebraic_power(f_decay);
    let kernel_power = match inverse_decay(kind) {
        KernelDecay::Power(p) => p,
        KernelDecay::ExpSqrt(_) => 0.0,
    };
    let outer = Tolerance::unchecked(tol.abs_tol() / amp, tol.rel_tol(), tol.max_evals())
        .with_noise(INNER_REL_TOL);
    let q = try_integrate_semi_infinite(
        |x| {
            let fx = f.eval(x, &inner_tolerance(&outer, x, f_power))?;
            if fx == 0.0 {
                return Ok(0.0);
            }
            let k = inverse_kernel(kind, n, x, &inner_tolerance(&outer, x, kernel_power))?;
            Ok(k.value * fx)
        },
        hint,
        &outer,
    )?;
    let value = amp * q.value;
    let amplified = amp * q.error_estimate;
    let requested = tol.target(value);
    if amplified > requested || !q.error_estimate.is_finite() {
        return Err(Error::PrecisionLoss {
            n,
            amplification: amp,
            quad_error: q.error_estimate,
            amplified,
            requested,
        });
    }
    Ok(QuadratureResult {
        value,
        error_estimate: amplified,
        evaluations: q.evaluations,
        converged: q.converged || amplified <= requested,
        hint_violated: q.hint_violated,
    })
}

/// Reconstructs `f(x) = c Σ_n sinh(πn) K_n(x) a_n` from a finite sequence.
pub fn invert_to_function(
    kind: TransformKind,
    a: &CoefficientSequence,
    x: f64,
    tol: &Tolerance,
) -> Result<QuadratureResult> {
    let max = a.max_index();
    if max > N_INVERT_MAX {
        check_invert_index(kind, max, tol)?;
    }
    let support = a.iter().filter(|&(_, v)| v != 0.0).count().max(1) as f64;
    let mut error = 0.0;
    let mut evaluations = 0u64;
    let mut converged = true;
    let series = try_sum_series(
        |n| {
            let an = a.get(n);
            if n < 1 || an == 0.0 {
                return Ok(0.0);
            }
            let amp = amplification(kind, n);
            let kernel_tol = Tolerance::unchecked(
                tol.abs_tol() / (amp * an.abs() * support),
                1e-13,
                tol.max_evals(),
            );
            let k = inverse_kernel(kind, n, x, &kernel_tol)?;
            error += amp * an.abs() * k.error_estimate;
            evaluations += k.evaluations;
            converged &= k.converged;
            Ok(amp * k.value * an)
        },
        a.start(),
        &TruncationPolicy::FixedCount(a.values().len()),
    )?;
    let requested = tol.target(series.value);
    if error > requested {
        return Err(Error::PrecisionLoss {
            n: max,
            amplification: amplification(kind, max.max(1)),
            quad_error: error / amplification(kind, max.max(1)),
            amplified: error,
            requested,
        });
    }
    Ok(QuadratureResult {
        value: series.value,
        error_estimate: error,
        evaluations,
        converged,
        hint_violated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_sequence_synthesizes_zero() {
        let a = CoefficientSequence::new(1, vec![0.0; 4]).unwrap();
        for k in TransformKind::ALL {
            assert_eq!(synthesize(k, &a, 1.3).unwrap(), 0.0);
        }
    }

    #[test]
    fn precision_guard_beyond_max_index() {
        let f = FunctionSpec::callable(|x: f64| (-x).exp(), DecayHint::Exponential(1.0));
        let r = invert_to_sequence(TransformKind::ReI, &f, 12, &default_tolerance());
        assert!(matches!(r, Err(Error::PrecisionLoss { n: 12, .. })));
    }

    #[test]
    fn zero_function_inverts_to_zero() {
        let f = FunctionSpec::callable(|_| 0.0, DecayHint::Exponential(1.0));
        for k in TransformKind::ALL {
            let r = invert_to_sequence(k, &f, 3, &default_tolerance()).unwrap();
            assert_eq!(r.value, 0.0);
            assert_eq!(r.error_estimate, 0.0);
        }
    }

    #[test]
    fn weak_decay_is_rejected() {
        let f = FunctionSpec::callable(|x: f64| 1.0 / (1.0 + x), DecayHint::Algebraic(0.75));
        let r = analyze(TransformKind::ReI, &f, 1, &default_tolerance());
        assert!(matches!(r, Err(Error::InsufficientDecay { .. })));
    }
}
