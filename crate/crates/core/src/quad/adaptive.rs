use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::{QuadratureResult, Tolerance};
use crate::error::{Error, Result};

// 15-point Kronrod extension of the 7-point Gauss rule, abscissae in
// decreasing order; the Gauss nodes are the odd-indexed entries.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const ROUNDOFF_FACTOR: f64 = 5.0 * f64::EPSILON;
/// Bisections that left the value and the error essentially unchanged.
/// After this many the error is assumed to be dominated by rounding.
const MAX_STAGNANT_SPLITS: usize = 10;
/// Bisections that made the error estimate grow.
const MAX_GROWING_SPLITS: usize = 20;
/// From this many evaluations on, each doubling of the count must cut the
/// total error to below `STALL_RATIO` times its value at the last doubling.
const STALL_CHECK_START: u64 = 8_192;
const STALL_RATIO: f64 = 0.9;

/// Values the adaptive rule can integrate: reals and complex numbers.
pub(crate) trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn finite(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn finite(self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
    /// Error is at the round-off floor; splitting would not reduce it.
    settled: bool,
}

fn kronrod<V, F>(f: &mut F, a: f64, b: f64, floor_factor: f64) -> Result<Panel<V>>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<V> {
        let v = f(x)?;
        if !v.finite() {
            return Err(Error::NonFiniteIntegrand { at: x });
        }
        Ok(v)
    };
    let fc = eval(center)?;
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    let mut abs_sum = fc.magnitude() * WGK[7];
    let mut lower = [V::zero(); 7];
    let mut upper = [V::zero(); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        lower[j] = f1;
        upper[j] = f2;
        kron = kron + (f1 + f2) * WGK[j];
        abs_sum += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = WGK[7] * (fc - mean).magnitude();
    for j in 0..7 {
        asc += WGK[j] * ((lower[j] - mean).magnitude() + (upper[j] - mean).magnitude());
    }
    let width = half.abs();
    let value = kron * half;
    let abs_sum = abs_sum * width;
    let asc = asc * width;
    let mut error = ((kron - gauss) * half).magnitude();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let floor = ROUNDOFF_FACTOR * abs_sum;
    let settled = error <= floor_factor * abs_sum;
    Ok(Panel {
        a,
        b,
        value,
        error: error.max(floor),
        settled,
    })
}

struct Queued(f64, usize);

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Queued {
    // Largest error first; ties go to the older panel.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .total_cmp(&other.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

/// Adaptive bisection over a set of initial panels. Returns the value, the
/// summed error estimate, the evaluation count and whether the target was met.
pub(crate) fn adaptive<V, F>(
    mut f: F,
    breaks: &[f64],
    tol: &Tolerance,
) -> Result<(V, f64, u64, bool)>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V>,
{
    for w in breaks.windows(2) {
        if !(w[0] < w[1]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(Error::InvalidInterval { a: w[0], b: w[1] });
        }
    }
    let floor_factor = ROUNDOFF_FACTOR.max(tol.noise);
    let mut panels: Vec<Panel<V>> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut evals = 0u64;
    for w in breaks.windows(2) {
        let p = kronrod(&mut f, w[0], w[1], floor_factor)?;
        evals += 15;
        if !p.settled {
            heap.push(Queued(p.error, panels.len()));
        }
        panels.push(p);
    }
    let mut alive = vec![true; panels.len()];
    let mut splits = 0usize;
    let mut stagnant = 0usize;
    let mut growing = 0usize;
    let mut refresh_at = 64usize;
    let (mut value, mut error) = totals(&panels, &alive);
    let mut checkpoint = STALL_CHECK_START;
    let mut checkpoint_error = f64::INFINITY;
    loop {
        if error <= tol.target(value.magnitude()) {
            break;
        }
        if evals + 30 > tol.max_evals() {
            break;
        }
        let Some(Queued(_, idx)) = heap.pop() else {
            break;
        };
        let parent = panels[idx];
        let mid = 0.5 * (parent.a + parent.b);
        if !(parent.a < mid && mid < parent.b) {
            continue;
        }
        let left = kronrod(&mut f, parent.a, mid, floor_factor)?;
        let right = kronrod(&mut f, mid, parent.b, floor_factor)?;
        evals += 30;
        let children = left.value + right.value;
        let child_error = left.error + right.error;
        if (children - parent.value).magnitude() <= 1e-5 * children.magnitude()
            && child_error >= 0.99 * parent.error
        {
            stagnant += 1;
        }
        if splits >= 10 && child_error > parent.error {
            growing += 1;
        }
        alive[idx] = false;
        value = value - parent.value + left.value + right.value;
        error += left.error + right.error - parent.error;
        for child in [left, right] {
            if !child.settled {
                heap.push(Queued(child.error, panels.len()));
            }
            panels.push(child);
            alive.push(true);
        }
        // Re-sum from scratch now and then so the running totals cannot drift;
        // the interval grows with the panel count to keep this amortised.
        splits += 1;
        if splits == refresh_at {
            (value, error) = totals(&panels, &alive);
            refresh_at += 64 + panels.len() / 2;
        }
        if stagnant >= MAX_STAGNANT_SPLITS || growing >= MAX_GROWING_SPLITS {
            break;
        }
        if evals >= checkpoint {
            if error > STALL_RATIO * checkpoint_error {
                break;
            }
            checkpoint *= 2;
            checkpoint_error = error;
        }
    }
    let (value, error) = totals(&panels, &alive);
    let converged = error <= tol.target(value.magnitude());
    Ok((value, error, evals, converged))
}

/// Sums live panels in order of their left endpoint.
fn totals<V: QuadValue>(panels: &[Panel<V>], alive: &[bool]) -> (V, f64) {
    let mut order: Vec<usize> = (0..panels.len()).filter(|&i| alive[i]).collect();
    order.sort_by(|&i, &j| panels[i].a.total_cmp(&panels[j].a));
    let values: Vec<V> = order.iter().map(|&i| panels[i].value).collect();
    let error = order.iter().map(|&i| panels[i].error).sum();
    (pairwise(&values), error)
}

// Pairwise reduction: deterministic, error grows like log(n)·ε.
fn pairwise<V: QuadValue>(values: &[V]) -> V {
    match values.len() {
        0 => V::zero(),
        1 => values[0],
        n => {
            let (l, r) = values.split_at(n / 2);
            pairwise(l) + pairwise(r)
        }
    }
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of `f` over `[a, b]`.
///
/// The rule never samples the endpoints, so integrable endpoint
/// singularities are allowed. Exhausting the budget is not an error: the
/// best estimate comes back with `converged = false`.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    try_integrate_finite(|x| Ok(f(x)), a, b, tol)
}

/// [`integrate_finite`] for integrands that can fail; the first error aborts
/// the integration and is returned.
pub fn try_integrate_finite<F>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    integrate_breaks(f, &[a, b], tol)
}

pub(crate) fn integrate_breaks<F>(f: F, breaks: &[f64], tol: &Tolerance) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (value, error_estimate, evaluations, converged) = adaptive::<f64, _>(f, breaks, tol)?;
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
        converged,
        hint_violated: false,
    })
}
