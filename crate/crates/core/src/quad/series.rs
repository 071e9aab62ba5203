use super::{CompensatedSum, QuadratureResult};
use crate::error::{Error, Result};

/// How many terms of a series to take.
pub enum TruncationPolicy<'a> {
    /// Exactly `N` terms; the error estimate is the magnitude of the last one.
    FixedCount(usize),
    /// Keep adding terms until `bound(n)`, an upper bound on `Σ_{k>n} |a_k|`,
    /// drops below `tol`, or `max_terms` terms have been taken.
    TailBound {
        bound: &'a dyn Fn(i64) -> f64,
        tol: f64,
        max_terms: usize,
    },
}

/// `Σ_{n≥start} term(n)`, accumulated left to right with compensation.
pub fn sum_series<F>(term: F, start: i64, policy: &TruncationPolicy<'_>) -> Result<QuadratureResult>
where
    F: Fn(i64) -> f64,
{
    try_sum_series(|n| Ok(term(n)), start, policy)
}

/// [`sum_series`] for fallible terms.
pub fn try_sum_series<F>(
    mut term: F,
    start: i64,
    policy: &TruncationPolicy<'_>,
) -> Result<QuadratureResult>
where
    F: FnMut(i64) -> Result<f64>,
{
    let mut sum = CompensatedSum::default();
    let mut evaluations = 0u64;
    let mut next = |n: i64, sum: &mut CompensatedSum| -> Result<f64> {
        let t = term(n)?;
        if !t.is_finite() {
            return Err(Error::NonFiniteTerm { index: n });
        }
        sum.add(t);
        Ok(t)
    };
    match *policy {
        TruncationPolicy::FixedCount(count) => {
            let mut last = 0.0;
            for k in 0..count {
                last = next(start + k as i64, &mut sum)?;
                evaluations += 1;
            }
            Ok(QuadratureResult {
                value: sum.value(),
                error_estimate: last.abs(),
                evaluations,
                converged: true,
                hint_violated: false,
            })
        }
        TruncationPolicy::TailBound {
            bound,
            tol,
            max_terms,
        } => {
            let mut remaining = f64::INFINITY;
            for n in (start..).take(max_terms) {
                next(n, &mut sum)?;
                evaluations += 1;
                remaining = bound(n);
                if remaining < tol {
                    break;
                }
            }
            Ok(QuadratureResult {
                value: sum.value(),
                error_estimate: remaining,
                evaluations,
                converged: remaining < tol,
                hint_violated: false,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_with_tail_bound() {
        let bound = |n: i64| 0.5f64.powi(n as i32);
        let policy = TruncationPolicy::TailBound {
            bound: &bound,
            tol: 1e-10,
            max_terms: 1000,
        };
        let r = sum_series(|n| 0.5f64.powi(n as i32), 1, &policy).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn self_refinement() {
        let f = |n: i64| (n as f64).sin() / (n as f64).powi(2);
        let a = sum_series(f, 1, &TruncationPolicy::FixedCount(100_000)).unwrap();
        let b = sum_series(f, 1, &TruncationPolicy::FixedCount(1_000_000)).unwrap();
        assert!((a.value - b.value).abs() < 1e-5);
    }

    #[test]
    fn zero_series() {
        let r = sum_series(|_| 0.0, 0, &TruncationPolicy::FixedCount(50)).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error_estimate, 0.0);
    }

    #[test]
    fn non_finite_term_index() {
        let r = sum_series(
            |n| if n == 7 { f64::INFINITY } else { 1.0 },
            0,
            &TruncationPolicy::FixedCount(10),
        );
        assert!(matches!(r, Err(Error::NonFiniteTerm { index: 7 })));
    }
}
