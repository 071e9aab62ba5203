use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::TransformKind;

/// Finitely supported real sequence `a_start, a_start+1, ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSequence {
    start: i64,
    values: Vec<f64>,
}

impl CoefficientSequence {
    pub fn new(start: i64, values: Vec<f64>) -> Result<Self> {
        if start != 0 && start != 1 {
            return Err(Error::InvalidSequence(format!(
                "start index must be 0 or 1, got {start}"
            )));
        }
        if values.is_empty() {
            return Err(Error::InvalidSequence("sequence is empty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSequence(format!(
                "entry a_{} is not finite",
                start + i as i64
            )));
        }
        Ok(CoefficientSequence { start, values })
    }

    /// `e_m`: one at index `m >= 1`, zero elsewhere, starting at 1.
    pub fn unit(m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidSequence(format!(
                "unit index must be >= 1, got {m}"
            )));
        }
        let mut values = vec![0.0; m as usize];
        values[m as usize - 1] = 1.0;
        CoefficientSequence::new(1, values)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_index(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    /// `a_n`, zero outside the stored range.
    pub fn get(&self, n: i64) -> f64 {
        if n < self.start {
            return 0.0;
        }
        self.values
            .get((n - self.start) as usize)
            .copied()
            .unwrap_or(0.0)
    }

    /// `(n, a_n)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.start + i as i64, v))
    }

    /// Checks the start index against the kind's summation range.
    pub fn check_kind(&self, kind: TransformKind) -> Result<()> {
        if self.start < kind.synthesis_start() {
            return Err(Error::InvalidSequence(format!(
                "{kind} sequences start at {}, got {}",
                kind.synthesis_start(),
                self.start
            )));
        }
        Ok(())
    }

    pub fn scaled_sum(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        let start = self.start.min(other.start);
        let end = self.max_index().max(other.max_index());
        let values = (start..=end)
            .map(|n| alpha * self.get(n) + beta * other.get(n))
            .collect();
        CoefficientSequence::new(start, values)
    }
}

/// Sizes of the convergence conditions for a sequence. For a finite sequence
/// both conditions hold; the sums indicate how well conditioned it is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionReport {
    pub kind: TransformKind,
    /// `Σ |a_n| e^{πn/2} / √n` for `ReI`, `Σ |a_n|` otherwise.
    pub weighted_sum: f64,
    pub satisfied: bool,
}

pub fn check_condition(kind: TransformKind, a: &CoefficientSequence) -> ConditionReport {
    let weighted_sum = match kind {
        TransformKind::ReI => a
            .iter()
            .filter(|&(n, _)| n >= 1)
            .map(|(n, v)| {
                let n = n as f64;
                v.abs() * (0.5 * std::f64::consts::PI * n).exp() / n.sqrt()
            })
            .sum(),
        TransformKind::ReJK | TransformKind::ImJK => a.values().iter().map(|v| v.abs()).sum(),
    };
    ConditionReport {
        kind,
        weighted_sum,
        satisfied: weighted_sum.is_finite(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(CoefficientSequence::new(2, vec![1.0]).is_err());
        assert!(CoefficientSequence::new(0, vec![]).is_err());
        assert!(CoefficientSequence::new(0, vec![f64::NAN]).is_err());
        let a = CoefficientSequence::new(0, vec![1.0]).unwrap();
        assert!(a.check_kind(TransformKind::ReI).is_err());
        assert!(a.check_kind(TransformKind::ReJK).is_ok());
    }

    #[test]
    fn condition_sums() {
        let e1 = CoefficientSequence::unit(1).unwrap();
        let r = check_condition(TransformKind::ReI, &e1);
        assert!((r.weighted_sum - 4.810_477_380_965_351).abs() < 1e-12);
        assert_eq!(check_condition(TransformKind::ReJK, &e1).weighted_sum, 1.0);
        let a = CoefficientSequence::new(1, vec![1.0, 0.5, 0.25]).unwrap();
        assert_eq!(check_condition(TransformKind::ReJK, &a).weighted_sum, 1.75);
    }
}
