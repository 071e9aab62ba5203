use std::f64::consts::FRAC_PI_2;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::checks::ineq17_ratio;
use super::{verify, IdentityId, IdentityParams, IdentityReport};
use crate::error::{Error, Result};

/// Grid density for [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Points per parameter axis, 3 to 5. The inequality sweeps always use
    /// their fixed 20×20 grid.
    pub per_axis: usize,
    /// Wall-clock budget; points not started when it runs out are skipped.
    pub budget: Duration,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            per_axis: 3,
            budget: Duration::from_secs(300),
        }
    }
}

impl GridSpec {
    pub fn new(per_axis: usize, budget: Duration) -> Result<Self> {
        if !(3..=5).contains(&per_axis) {
            return Err(Error::Domain {
                name: "per_axis",
                value: per_axis as f64,
                expected: "3 <= per_axis <= 5",
            });
        }
        Ok(GridSpec { per_axis, budget })
    }

    fn pick<T: Copy>(&self, axis: &[T; 5]) -> Vec<T> {
        let k = self.per_axis.clamp(3, 5);
        (0..k)
            .map(|i| axis[(i * 4 + (k - 1) / 2) / (k - 1)])
            .collect()
    }
}

/// Reports in a fixed order plus totals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub reports: Vec<IdentityReport>,
    pub passed: usize,
    pub failed: usize,
    /// Some points were skipped because the time budget ran out.
    pub budget_exceeded: bool,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && !self.budget_exceeded
    }
}

const INDEX_AXIS: [i64; 5] = [1, 2, 3, 5, 8];
const ANGLE_AXIS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 3.0];
const TAU_AXIS: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];
const X_AXIS: [f64; 5] = [0.5, 1.0, 3.0, 5.0, 8.0];
const T_AXIS: [f64; 5] = [0.25, 0.5, 1.0, 3.0, 8.0];
const D29_N_AXIS: [i64; 5] = [1, 2, 5, 10, 50];
const D29_ANGLE_AXIS: [f64; 5] = [-FRAC_PI_2, -0.4, 0.7, FRAC_PI_2, 3.0];
/// The inequality sweeps: `τ = 0.5, 1, …, 10` and `x = 1, 2, …, 20`.
pub const SWEEP_SIZE: usize = 20;
/// Safety factor between the largest fitted ratio and the constant `A`.
pub const INEQ17_FIT_FACTOR: f64 = 2.0;

pub(crate) fn sweep_point(i: usize, j: usize) -> (f64, f64) {
    (0.5 * (i + 1) as f64, (j + 1) as f64)
}

/// Fits `A` on the sweep points with `i + j` even: the largest
/// `|K_{iτ}(x)| x^{1/4} √sinh(πτ)` times [`INEQ17_FIT_FACTOR`].
pub fn fit_ineq17_constant() -> Result<f64> {
    let mut best = 0.0f64;
    for i in 0..SWEEP_SIZE {
        for j in 0..SWEEP_SIZE {
            if (i + j) % 2 == 0 {
                let (tau, x) = sweep_point(i, j);
                best = best.max(ineq17_ratio(tau, x)?);
            }
        }
    }
    Ok(INEQ17_FIT_FACTOR * best)
}

fn points(id: IdentityId, grid: &GridSpec) -> Result<Vec<IdentityParams>> {
    let p = IdentityParams::default();
    let mut out = Vec::new();
    match id {
        IdentityId::I19
        | IdentityId::I27
        | IdentityId::MB18
        | IdentityId::MB25
        | IdentityId::MB26 => {
            for tau in grid.pick(&TAU_AXIS) {
                for x in grid.pick(&X_AXIS) {
                    out.push(p.with_tau(tau).with_x(x));
                }
            }
        }
        IdentityId::I20 | IdentityId::I23 | IdentityId::I28 | IdentityId::I29 => {
            for n in grid.pick(&INDEX_AXIS) {
                for u in grid.pick(&ANGLE_AXIS) {
                    out.push(p.with_n(n).with_u(u));
                }
            }
        }
        IdentityId::I22 => {
            for u in grid.pick(&ANGLE_AXIS) {
                for t in grid.pick(&T_AXIS) {
                    out.push(p.with_u(u).with_t(t));
                }
            }
        }
        IdentityId::D29 => {
            for big_n in grid.pick(&D29_N_AXIS) {
                for t in grid.pick(&D29_ANGLE_AXIS) {
                    for u in grid.pick(&D29_ANGLE_AXIS) {
                        out.push(p.with_big_n(big_n).with_t(t).with_u(u));
                    }
                }
            }
        }
        IdentityId::INEQ16 => {
            for i in 0..SWEEP_SIZE {
                for j in 0..SWEEP_SIZE {
                    let (tau, x) = sweep_point(i, j);
                    out.push(p.with_tau(tau).with_x(x));
                }
            }
        }
        IdentityId::INEQ17 => {
            let a = fit_ineq17_constant()?;
            for i in 0..SWEEP_SIZE {
                for j in 0..SWEEP_SIZE {
                    if (i + j) % 2 == 1 {
                        let (tau, x) = sweep_point(i, j);
                        out.push(p.with_tau(tau).with_x(x).with_constant(a));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Runs the identities in `filter` (all of them when `None`) on the default
/// grid. Points run in parallel; reports come back in identity order and
/// then grid order.
pub fn run_suite(filter: Option<&[IdentityId]>, grid: &GridSpec) -> Result<SuiteReport> {
    let ids: Vec<IdentityId> = match filter {
        Some(f) if !f.is_empty() => IdentityId::ALL
            .into_iter()
            .filter(|id| f.contains(id))
            .collect(),
        _ => IdentityId::ALL.to_vec(),
    };
    let mut tasks = Vec::new();
    for id in ids {
        for p in points(id, grid)? {
            tasks.push((id, p));
        }
    }
    let start = Instant::now();
    let results: Vec<Option<Result<IdentityReport>>> = tasks
        .par_iter()
        .map(|(id, p)| {
            if start.elapsed() > grid.budget {
                return None;
            }
            Some(verify(*id, p, &id.quadrature_tolerance()))
        })
        .collect();
    let mut reports = Vec::with_capacity(results.len());
    let mut budget_exceeded = false;
    for r in results {
        match r {
            Some(r) => reports.push(r?),
            None => budget_exceeded = true,
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    Ok(SuiteReport {
        failed: reports.len() - passed,
        passed,
        reports,
        budget_exceeded,
    })
}
