use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernels::{inverse_weight, TransformKind};
use crate::quad::{try_integrate_finite, DecayHint, QuadratureResult, Tolerance};

/// `ψ(u) = c_0 + Σ c_m cos(mu) + Σ b_m sin(mu)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPolynomial {
    /// `b_1, b_2, ...`
    pub sin_coeffs: Vec<f64>,
    /// `c_0, c_1, ...`
    pub cos_coeffs: Vec<f64>,
}

impl TrigPolynomial {
    pub fn sin(m: usize, coeff: f64) -> Self {
        let mut p = TrigPolynomial::default();
        p.add_term(Term::Sin, m, coeff);
        p
    }

    pub fn cos(m: usize, coeff: f64) -> Self {
        let mut p = TrigPolynomial::default();
        p.add_term(Term::Cos, m, coeff);
        p
    }

    pub fn plus(mut self, other: &TrigPolynomial) -> Self {
        for (i, &b) in other.sin_coeffs.iter().enumerate() {
            self.add_term(Term::Sin, i + 1, b);
        }
        for (i, &c) in other.cos_coeffs.iter().enumerate() {
            self.add_term(Term::Cos, i, c);
        }
        self
    }

    fn add_term(&mut self, term: Term, m: usize, coeff: f64) {
        let (coeffs, idx) = match term {
            Term::Sin => (&mut self.sin_coeffs, m - 1),
            Term::Cos => (&mut self.cos_coeffs, m),
        };
        if coeffs.len() <= idx {
            coeffs.resize(idx + 1, 0.0);
        }
        coeffs[idx] += coeff;
    }

    pub fn eval(&self, u: f64) -> f64 {
        let mut s = 0.0;
        for (i, &c) in self.cos_coeffs.iter().enumerate() {
            s += c * (i as f64 * u).cos();
        }
        for (i, &b) in self.sin_coeffs.iter().enumerate() {
            s += b * ((i + 1) as f64 * u).sin();
        }
        s
    }

    /// `Σ m (|b_m| + |c_m|)`, a Lipschitz constant for `ψ`.
    pub fn lipschitz_bound(&self) -> f64 {
        let s: f64 = self
            .sin_coeffs
            .iter()
            .enumerate()
            .map(|(i, b)| (i + 1) as f64 * b.abs())
            .sum();
        let c: f64 = self
            .cos_coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| i as f64 * c.abs())
            .sum();
        s + c
    }

    /// `∫_{-π}^{π} ψ(u) sin(nu) du = π b_n`.
    pub fn sine_moment(&self, n: i64) -> f64 {
        if n < 1 {
            return 0.0;
        }
        PI * self.sin_coeffs.get(n as usize - 1).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.sin_coeffs
            .iter()
            .chain(&self.cos_coeffs)
            .all(|&c| c == 0.0)
    }

    /// Parses `sin:m:coeff` / `cos:m:coeff` terms joined by `+`,
    /// e.g. `sin:1:1+sin:3:0.5`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = TrigPolynomial::default();
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty psi specification".into()));
        }
        for raw in text.split('+') {
            let parts: Vec<&str> = raw.trim().split(':').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!(
                    "psi term '{raw}' is not of the form sin:m:coeff or cos:m:coeff"
                )));
            }
            let m: usize = parts[1]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad harmonic '{}' in '{raw}'", parts[1])))?;
            let coeff: f64 = parts[2]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient '{}' in '{raw}'", parts[2])))?;
            if !coeff.is_finite() {
                return Err(Error::Parse(format!(
                    "coefficient in '{raw}' is not finite"
                )));
            }
            match parts[0].trim() {
                "sin" if m >= 1 => p.add_term(Term::Sin, m, coeff),
                "sin" => return Err(Error::Parse("sin harmonics start at 1".into())),
                "cos" => p.add_term(Term::Cos, m, coeff),
                other => return Err(Error::Parse(format!("unknown psi term '{other}'"))),
            }
        }
        Ok(p)
    }
}

impl fmt::Display for TrigPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.cos_coeffs.iter().enumerate() {
            if c != 0.0 {
                terms.push(format!("cos:{i}:{c}"));
            }
        }
        for (i, &b) in self.sin_coeffs.iter().enumerate() {
            if b != 0.0 {
                terms.push(format!("sin:{}:{b}", i + 1));
            }
        }
        if terms.is_empty() {
            f.write_str("cos:0:0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

#[derive(Clone, Copy)]
enum Term {
    Sin,
    Cos,
}

type Evaluator = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// The continuous side of a transform.
#[derive(Clone)]
pub enum FunctionSpec {
    /// `f` given through a trigonometric density `ψ`:
    ///
    /// * `ReI`:  `∫_{-π}^{π} g(x cosh²(u/2)) ψ(u) sinh(u) du`, `g(z) = e^z E_1(z)`
    /// * `ReJK`: `x ∫_{-π}^{π} ψ(u) sinh(u) / (x² + cosh²u) du`
    /// * `ImJK`: `∫_{-π}^{π} ψ(u) sinh(2u) / (x² + cosh²u) du`
    PsiGenerated {
        kind: TransformKind,
        psi: TrigPolynomial,
    },
    /// Any function on `(0, ∞)` with its tail envelope.
    Callable { f: Evaluator, decay: DecayHint },
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::PsiGenerated { kind, psi } => f
                .debug_struct("PsiGenerated")
                .field("kind", kind)
                .field("psi", &psi.to_string())
                .finish(),
            FunctionSpec::Callable { decay, .. } => {
                f.debug_struct("Callable").field("decay", decay).finish()
            }
        }
    }
}

impl FunctionSpec {
    pub fn psi(kind: TransformKind, psi: TrigPolynomial) -> Self {
        FunctionSpec::PsiGenerated { kind, psi }
    }

    pub fn callable<F>(f: F, decay: DecayHint) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        FunctionSpec::Callable {
            f: Arc::new(move |x| Ok(f(x))),
            decay,
        }
    }

    pub fn fallible<F>(f: F, decay: DecayHint) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        FunctionSpec::Callable {
            f: Arc::new(f),
            decay,
        }
    }

    /// Decay of `f` itself. ψ-generated functions fall off like `1/x`
    /// (`ReI`, `ReJK`) or `1/x²` (`ImJK`).
    pub fn decay(&self) -> DecayHint {
        match self {
            FunctionSpec::Callable { decay, .. } => *decay,
            FunctionSpec::PsiGenerated { kind, .. } => match kind {
                TransformKind::ReI | TransformKind::ReJK => DecayHint::Algebraic(1.0),
                TransformKind::ImJK => DecayHint::Algebraic(2.0),
            },
        }
    }

    /// `f(x)`; ψ-generated functions are integrated to `tol`.
    pub fn eval(&self, x: f64, tol: &Tolerance) -> Result<f64> {
        match self {
            FunctionSpec::Callable { f, .. } => f(x),
            FunctionSpec::PsiGenerated { kind, psi } => {
                Ok(psi_function_value(*kind, psi, x, tol)?.value)
            }
        }
    }
}

/// Evaluates a ψ-generated function at `x > 0` by quadrature over `[-π, π]`.
/// For `ReI` only the scaled `g(z) = e^z E_1(z)` is ever formed.
pub fn psi_function_value(
    kind: TransformKind,
    psi: &TrigPolynomial,
    x: f64,
    tol: &Tolerance,
) -> Result<QuadratureResult> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            expected: "finite and > 0",
        });
    }
    if psi.is_zero() {
        return Ok(QuadratureResult::exact_zero());
    }
    // Split at 0 so each half sees a smooth integrand.
    let left = try_integrate_finite(
        |u| Ok(inverse_weight(kind, x, u)? * psi.eval(u)),
        -PI,
        0.0,
        &tol.split_abs(2.0),
    )?;
    let right = try_integrate_finite(
        |u| Ok(inverse_weight(kind, x, u)? * psi.eval(u)),
        0.0,
        PI,
        &tol.split_abs(2.0),
    )?;
    let value = left.value + right.value;
    let error_estimate = left.error_estimate + right.error_estimate;
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations: left.evaluations + right.evaluations,
        converged: left.converged && right.converged,
        hint_violated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = TrigPolynomial::parse("sin:1:1+sin:3:0.5+cos:0:2").unwrap();
        assert_eq!(p.sin_coeffs, vec![1.0, 0.0, 0.5]);
        assert_eq!(p.cos_coeffs, vec![2.0]);
        assert_eq!(TrigPolynomial::parse(&p.to_string()).unwrap(), p);
        assert!(TrigPolynomial::parse("sin:0:1").is_err());
        assert!(TrigPolynomial::parse("tan:1:1").is_err());
        assert!(TrigPolynomial::parse("sin:1").is_err());
        assert!((p.lipschitz_bound() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn zero_psi_is_zero() {
        let r = psi_function_value(
            TransformKind::ReJK,
            &TrigPolynomial::default(),
            1.0,
            &Tolerance::default(),
        )
        .unwrap();
        assert_eq!(r.value, 0.0);
    }
}
