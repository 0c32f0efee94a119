//! Hausdorff distance between sampled closed curves.

use std::f64::consts::PI;

use crate::curves::ClosedCurve;
use crate::geom::Vec2;
use crate::spectral::TrigSeries;

/// Oversampling factor of the candidate point sets.
const DENSE_FACTOR: usize = 4;
/// Number of dense local extrema refined per search.
const SEEDS: usize = 3;

/// Symmetric Hausdorff distance between the point sets of two curves.
///
/// Each curve is densely resampled (`4N` points); for every dense point of one
/// curve the closest local minima of the distance to the other dense set seed a
/// foot-point search on the other curve's trigonometric interpolant. This makes
/// the result insensitive to how the two curves are parametrized or oriented.
/// The largest local maxima over the first curve are refined the same way.
pub fn hausdorff(a: &ClosedCurve, b: &ClosedCurve) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// `sup_{p ∈ a} dist(p, b)`.
pub fn directed_hausdorff(a: &ClosedCurve, b: &ClosedCurve) -> f64 {
    let target = Target::new(b);
    let from = a.dense_samples(DENSE_FACTOR);
    let m = from.len();
    let h = 2.0 * PI / m as f64;
    let d: Vec<f64> = from.iter().map(|&p| target.distance(p)).collect();
    let mut maxima: Vec<usize> = (0..m).filter(|&j| d[j] >= d[(j + m - 1) % m] && d[j] >= d[(j + 1) % m]).collect();
    maxima.sort_by(|&x, &y| d[y].total_cmp(&d[x]));
    let (ax, ay) = a.coordinate_series();
    let at = |t: f64| Vec2::new(ax.eval(t), ay.eval(t));
    maxima
        .iter()
        .take(SEEDS)
        .map(|&j| {
            let t0 = j as f64 * h;
            -golden_min(|t| -target.distance(at(t)), t0 - h, t0 + h).1
        })
        .fold(d.iter().cloned().fold(0.0, f64::max), f64::max)
}

/// Dense samples and interpolant of the curve distances are measured to.
struct Target {
    dense: Vec<Vec2>,
    x: TrigSeries,
    y: TrigSeries,
    h: f64,
}

impl Target {
    fn new(curve: &ClosedCurve) -> Self {
        let dense = curve.dense_samples(DENSE_FACTOR);
        let (x, y) = curve.coordinate_series();
        let h = 2.0 * PI / dense.len() as f64;
        Target { dense, x, y, h }
    }

    /// Distance from `p`, refined from the closest local minima of the dense distance.
    fn distance(&self, p: Vec2) -> f64 {
        let m = self.dense.len();
        let d2: Vec<f64> = self.dense.iter().map(|q| (*q - p).norm_sq()).collect();
        let mut minima: Vec<usize> =
            (0..m).filter(|&j| d2[j] <= d2[(j + m - 1) % m] && d2[j] <= d2[(j + 1) % m]).collect();
        minima.sort_by(|&x, &y| d2[x].total_cmp(&d2[y]));
        let dense = d2[minima[0]].sqrt();
        minima.iter().take(SEEDS).map(|&j| self.foot_distance(p, j as f64 * self.h)).fold(dense, f64::min)
    }

    /// Distance from `p` to the interpolant over `[t0 − h, t0 + h]`: golden
    /// section on the bracket, then Newton polish.
    fn foot_distance(&self, p: Vec2, t0: f64) -> f64 {
        let at = |t: f64, order: u32| Vec2::new(self.x.eval_derivative(t, order), self.y.eval_derivative(t, order));
        let f = |t: f64| (at(t, 0) - p).norm_sq();
        let (lo, hi) = (t0 - self.h, t0 + self.h);
        let (mut t, mut best) = golden_min(f, lo, hi);
        best = best.min(f(lo)).min(f(hi));
        for _ in 0..4 {
            let r = at(t, 0) - p;
            let d1 = at(t, 1);
            let dg = d1.norm_sq() + r.dot(at(t, 2));
            if dg <= 0.0 {
                break;
            }
            t = (t - r.dot(d1) / dg).clamp(lo, hi);
            best = best.min(f(t));
        }
        best.sqrt()
    }
}

/// Golden-section minimization on `[lo, hi]`; returns the best point and value.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    let t = 0.5 * (lo + hi);
    (t, f(t))
}
