//! Closed plane curves and wave fronts.
//!
//! A [`ClosedCurve`] is a cyclic list of uniformly spaced samples of a smooth
//! `2π`-periodic parametrization. All differential quantities are computed
//! with trigonometric interpolation (see [`crate::spectral`]).
//!
//! A [`WaveFront`] is described by its signed radius of curvature `r(θ)` as a
//! function of the tangent angle `θ`. Only odd harmonics `m ≥ 3` are allowed,
//! which makes `r(θ + π) = -r(θ)`; the front then closes after a half turn of
//! its tangent line, its cusps are the zeros of `r` and it has no inflections.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::spectral::{self, TrigSeries};

/// Relative tolerance on speed uniformity for curves flagged as arc-length.
pub const ARCLENGTH_TOL: f64 = 1e-6;

/// Relative curvature prominence below which extrema are treated as noise.
pub const VERTEX_PROMINENCE: f64 = 1e-8;

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    samples: Vec<Vec2>,
    arclength: bool,
}

/// Uniformly sampled closed plane curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveRepr", into = "CurveRepr")]
pub struct ClosedCurve {
    samples: Vec<Vec2>,
    arclength: bool,
}

impl TryFrom<CurveRepr> for ClosedCurve {
    type Error = Error;
    fn try_from(r: CurveRepr) -> Result<Self> {
        ClosedCurve::new(r.samples, r.arclength)
    }
}

impl From<ClosedCurve> for CurveRepr {
    fn from(c: ClosedCurve) -> Self {
        CurveRepr { samples: c.samples, arclength: c.arclength }
    }
}

impl ClosedCurve {
    pub const MIN_SAMPLES: usize = 64;

    /// Validate and wrap a cyclic sample list.
    ///
    /// When `arclength` is set the parametrization speed must be constant to
    /// within [`ARCLENGTH_TOL`] relative.
    pub fn new(samples: Vec<Vec2>, arclength: bool) -> Result<Self> {
        let n = samples.len();
        if n < Self::MIN_SAMPLES || !n.is_multiple_of(2) {
            return Err(Error::InvalidCurve(format!("samples: need an even count >= {}, got {n}", Self::MIN_SAMPLES)));
        }
        if let Some(j) = samples.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidCurve(format!("samples[{j}] is not finite")));
        }
        for j in 0..n {
            if samples[j] == samples[(j + 1) % n] {
                return Err(Error::InvalidCurve(format!("samples[{j}] and samples[{}] coincide", (j + 1) % n)));
            }
        }
        let curve = ClosedCurve { samples, arclength: false };
        if arclength {
            let dev = curve.speed_deviation();
            if dev > ARCLENGTH_TOL {
                return Err(Error::InvalidCurve(format!("arclength: speed varies by {dev:e} relative")));
            }
        }
        Ok(ClosedCurve { arclength, ..curve })
    }

    /// Sample `f` at `n` uniform parameter values in `[0, 2π)`.
    pub fn from_fn(n: usize, arclength: bool, f: impl Fn(f64) -> Vec2) -> Result<Self> {
        ClosedCurve::new(spectral::grid(n).into_iter().map(f).collect(), arclength)
    }

    /// Circle of radius `radius` about `center`, arc-length parametrized.
    pub fn circle(n: usize, center: Vec2, radius: f64) -> Result<Self> {
        ClosedCurve::from_fn(n, true, |t| center + Vec2::from_angle(t) * radius)
    }

    pub fn samples(&self) -> &[Vec2] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_arclength(&self) -> bool {
        self.arclength
    }

    /// The uniform parameter grid the samples live on.
    pub fn parameters(&self) -> Vec<f64> {
        spectral::grid(self.len())
    }

    pub(crate) fn coordinate_series(&self) -> (TrigSeries, TrigSeries) {
        let xs: Vec<f64> = self.samples.iter().map(|p| p.x).collect();
        let ys: Vec<f64> = self.samples.iter().map(|p| p.y).collect();
        (TrigSeries::from_samples(&xs), TrigSeries::from_samples(&ys))
    }

    /// Derivative samples with respect to the grid parameter.
    pub fn derivative(&self, order: u32) -> Vec<Vec2> {
        let (sx, sy) = self.coordinate_series();
        zip_vec(&sx.derivative_samples(order), &sy.derivative_samples(order))
    }

    /// Speed `|Γ'(x)|` at the samples.
    pub fn speed(&self) -> Vec<f64> {
        self.derivative(1).into_iter().map(Vec2::norm).collect()
    }

    fn speed_deviation(&self) -> f64 {
        let speed = self.speed();
        let mean = speed.iter().sum::<f64>() / speed.len() as f64;
        speed.iter().map(|s| (s - mean).abs()).fold(0.0, f64::max) / mean
    }

    /// Speed interpolant on a 4× refined grid (limits aliasing of `|Γ'|`).
    pub(crate) fn speed_series(&self) -> TrigSeries {
        let (sx, sy) = self.coordinate_series();
        let m = 4 * self.len();
        let dx = TrigSeries::from_samples(&sx.derivative_samples(1)).upsampled(m);
        let dy = TrigSeries::from_samples(&sy.derivative_samples(1)).upsampled(m);
        let speed: Vec<f64> = dx.iter().zip(&dy).map(|(a, b)| a.hypot(*b)).collect();
        TrigSeries::from_samples(&speed)
    }

    /// Total length.
    pub fn length(&self) -> f64 {
        2.0 * PI * self.speed_series().mean()
    }

    /// Unit tangent vectors at the samples.
    pub fn unit_tangents(&self) -> Vec<Vec2> {
        self.derivative(1).into_iter().map(Vec2::normalized).collect()
    }

    /// `∮ κ ds`.
    pub fn total_turning(&self) -> f64 {
        let d1 = self.derivative(1);
        let d2 = self.derivative(2);
        let n = self.len() as f64;
        d1.iter().zip(&d2).map(|(a, b)| a.cross(*b) / a.norm_sq()).sum::<f64>() * (2.0 * PI / n)
    }

    /// Uniformly scale about the origin. Scaling preserves the arc-length flag.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        ClosedCurve::new(self.samples.iter().map(|&p| p * factor).collect(), self.arclength)
    }

    /// Samples on a `factor`× refined grid.
    pub fn dense_samples(&self, factor: usize) -> Vec<Vec2> {
        let (sx, sy) = self.coordinate_series();
        let m = factor * self.len();
        zip_vec(&sx.upsampled(m), &sy.upsampled(m))
    }
}

pub(crate) fn zip_vec(xs: &[f64], ys: &[f64]) -> Vec<Vec2> {
    xs.iter().zip(ys).map(|(&x, &y)| Vec2::new(x, y)).collect()
}

/// Signed curvature `κ = Γ' × Γ'' / |Γ'|³` at every sample.
pub fn curvature(curve: &ClosedCurve) -> Vec<f64> {
    let d1 = curve.derivative(1);
    let d2 = curve.derivative(2);
    d1.iter().zip(&d2).map(|(a, b)| a.cross(*b) / a.norm().powi(3)).collect()
}

/// Reparametrize by arc length with `n_out` samples.
///
/// The arc-length function is the spectral antiderivative of the speed and is
/// inverted by safeguarded Newton iteration. With `rescale` the result is
/// scaled about the origin to perimeter `2π`.
pub fn resample_arclength(curve: &ClosedCurve, n_out: usize, rescale: bool) -> Result<ClosedCurve> {
    if n_out < ClosedCurve::MIN_SAMPLES || !n_out.is_multiple_of(2) {
        return Err(Error::arg("n_out", format!("need an even count >= 64, got {n_out}")));
    }
    let (sx, sy) = curve.coordinate_series();
    let speed = curve.speed_series();
    let mean_speed = speed.mean();
    let perimeter = 2.0 * PI * mean_speed;

    let mut points = Vec::with_capacity(n_out);
    let mut theta = 0.0;
    for j in 0..n_out {
        let target = perimeter * j as f64 / n_out as f64;
        if j > 0 {
            theta = invert_arclength(&speed, target, theta);
        }
        points.push(Vec2::new(sx.eval(theta), sy.eval(theta)));
    }
    if rescale {
        let s = 2.0 * PI / perimeter;
        for p in &mut points {
            *p = *p * s;
        }
    }
    ClosedCurve::new(points, true)
}

/// Solve `∫_0^θ speed = target` for `θ`, starting from `start ≤ θ`.
fn invert_arclength(speed: &TrigSeries, target: f64, start: f64) -> f64 {
    let mut lo = start;
    let mut hi = 2.0 * PI;
    let mut theta = start + (target - speed.eval_integral(start)) / speed.eval(start).max(1e-300);
    for _ in 0..100 {
        if !(theta > lo && theta < hi) {
            theta = 0.5 * (lo + hi);
        }
        let residual = speed.eval_integral(theta) - target;
        if residual > 0.0 {
            hi = theta;
        } else {
            lo = theta;
        }
        let step = residual / speed.eval(theta);
        let next = theta - step;
        if step.abs() < 1e-15 * (1.0 + theta.abs()) || hi - lo < 4.0 * f64::EPSILON {
            return if next > lo && next < hi { next } else { theta };
        }
        theta = next;
    }
    theta
}

/// Curvature extrema of an arc-length parametrized curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertices {
    /// Parameter locations in `[0, 2π)` (proportional to arc length).
    pub params: Vec<f64>,
    /// Curvature at each location.
    pub curvatures: Vec<f64>,
    /// Set when the curvature is constant to within the prominence threshold.
    pub circle: bool,
}

impl Vertices {
    pub fn count(&self) -> usize {
        self.params.len()
    }

    /// Largest parameter gap between cyclically consecutive vertices.
    pub fn max_gap(&self) -> f64 {
        let n = self.params.len();
        if n == 0 {
            return 2.0 * PI;
        }
        (0..n)
            .map(|i| {
                let next = if i + 1 == n { self.params[0] + 2.0 * PI } else { self.params[i + 1] };
                next - self.params[i]
            })
            .fold(0.0, f64::max)
    }
}

/// Locate the vertices (curvature extrema) of an arc-length parametrized curve.
pub fn vertices(curve: &ClosedCurve) -> Result<Vertices> {
    if !curve.is_arclength() {
        return Err(Error::NotArclength);
    }
    let kappa = curvature(curve);
    let n = kappa.len();
    let mean = kappa.iter().sum::<f64>() / n as f64;
    let (lo, hi) = kappa.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &k| (a.min(k), b.max(k)));
    let threshold = VERTEX_PROMINENCE * mean.abs().max(f64::MIN_POSITIVE);
    if hi - lo < threshold {
        return Ok(Vertices { params: Vec::new(), curvatures: Vec::new(), circle: true });
    }

    let series = TrigSeries::from_samples(&kappa);
    let dk = series.derivative_samples(1);
    let grid = spectral::grid(n);
    let h = 2.0 * PI / n as f64;
    // (location, curvature, is_max)
    let mut extrema: Vec<(f64, f64, bool)> = Vec::new();
    for j in 0..n {
        let a = dk[j];
        let b = dk[(j + 1) % n];
        let rising = a < 0.0 && b >= 0.0;
        let falling = a > 0.0 && b <= 0.0;
        if !(rising || falling) {
            continue;
        }
        let (mut l, mut r) = (grid[j], grid[j] + h);
        let fl = a;
        for _ in 0..60 {
            let mid = 0.5 * (l + r);
            let fm = series.eval_derivative(mid, 1);
            if (fm > 0.0) == (fl > 0.0) && fm != 0.0 {
                l = mid;
            } else {
                r = mid;
            }
            if r - l < 1e-15 {
                break;
            }
        }
        let x = 0.5 * (l + r);
        extrema.push((x.rem_euclid(2.0 * PI), series.eval(x), falling));
    }

    // Drop adjacent max/min pairs whose curvature difference is below the
    // prominence threshold, smallest first.
    loop {
        let m = extrema.len();
        if m < 2 {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for i in 0..m {
            let d = (extrema[i].1 - extrema[(i + 1) % m].1).abs();
            if d < threshold && best.is_none_or(|(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        match best {
            Some((i, _)) => {
                let j = (i + 1) % m;
                let (first, second) = if i < j { (j, i) } else { (i, j) };
                extrema.remove(first);
                extrema.remove(second);
            }
            None => break,
        }
    }
    extrema.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(Vertices {
        params: extrema.iter().map(|e| e.0).collect(),
        curvatures: extrema.iter().map(|e| e.1).collect(),
        circle: false,
    })
}

#[derive(Serialize, Deserialize)]
struct FrontRepr {
    harmonics: BTreeMap<u32, (f64, f64)>,
    #[serde(default)]
    basepoint: Vec2,
}

/// Closed wave front given by its signed radius of curvature
/// `r(θ) = Σ c_m cos mθ + s_m sin mθ` over odd `m ≥ 3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FrontRepr", into = "FrontRepr")]
pub struct WaveFront {
    harmonics: BTreeMap<u32, (f64, f64)>,
    basepoint: Vec2,
}

impl TryFrom<FrontRepr> for WaveFront {
    type Error = Error;
    fn try_from(r: FrontRepr) -> Result<Self> {
        WaveFront::new(r.harmonics, r.basepoint)
    }
}

impl From<WaveFront> for FrontRepr {
    fn from(f: WaveFront) -> Self {
        FrontRepr { harmonics: f.harmonics, basepoint: f.basepoint }
    }
}

impl WaveFront {
    pub fn new(harmonics: BTreeMap<u32, (f64, f64)>, basepoint: Vec2) -> Result<Self> {
        for (&m, &(c, s)) in &harmonics {
            if m < 3 || m % 2 == 0 {
                return Err(Error::InvalidFront(format!("harmonics: key {m} must be an odd integer >= 3")));
            }
            if !c.is_finite() || !s.is_finite() {
                return Err(Error::InvalidFront(format!("harmonics: coefficient {m} is not finite")));
            }
        }
        if !basepoint.is_finite() {
            return Err(Error::InvalidFront("basepoint is not finite".into()));
        }
        if harmonics.values().all(|&(c, s)| c == 0.0 && s == 0.0) {
            return Err(Error::InvalidFront("harmonics: all coefficients vanish".into()));
        }
        let front = WaveFront { harmonics, basepoint };
        let changes = front.sign_changes_full_turn();
        if changes % 4 != 2 {
            return Err(Error::InvalidFront(format!(
                "r(θ) has {} sign changes on [0, π); an odd number is required",
                changes / 2
            )));
        }
        Ok(front)
    }

    /// `r(θ) = amplitude · cos(mθ)`.
    pub fn cosine(m: u32, amplitude: f64) -> Result<Self> {
        WaveFront::new(BTreeMap::from([(m, (amplitude, 0.0))]), Vec2::ZERO)
    }

    pub fn harmonics(&self) -> &BTreeMap<u32, (f64, f64)> {
        &self.harmonics
    }

    pub fn basepoint(&self) -> Vec2 {
        self.basepoint
    }

    pub fn max_harmonic(&self) -> u32 {
        *self.harmonics.keys().next_back().expect("non-empty by construction")
    }

    /// Multiply every coefficient by `factor` (the front scales by `factor`
    /// about its basepoint).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let harmonics = self.harmonics.iter().map(|(&m, &(c, s))| (m, (c * factor, s * factor))).collect();
        WaveFront::new(harmonics, self.basepoint)
    }

    /// `d^order r / dθ^order`.
    pub fn radius_derivative(&self, theta: f64, order: u32) -> f64 {
        self.harmonics
            .iter()
            .map(|(&m, &(c, s))| {
                let mf = m as f64;
                let (sn, cs) = (mf * theta).sin_cos();
                let mag = mf.powi(order as i32);
                // derivative of c cos + s sin, rotating by order quarter turns
                let (a, b) = match order % 4 {
                    0 => (cs, sn),
                    1 => (-sn, cs),
                    2 => (-cs, -sn),
                    _ => (sn, -cs),
                };
                mag * (c * a + s * b)
            })
            .sum()
    }

    pub fn radius(&self, theta: f64) -> f64 {
        self.radius_derivative(theta, 0)
    }

    fn primitive(&self, theta: f64) -> Vec2 {
        let mut acc = Vec2::ZERO;
        for (&m, &(c, s)) in &self.harmonics {
            let p = (m + 1) as f64;
            let q = (m - 1) as f64;
            let (sp, cp) = (p * theta).sin_cos();
            let (sq, cq) = (q * theta).sin_cos();
            // ∫ r cos τ and ∫ r sin τ, term by term
            let x = 0.5 * c * (sp / p + sq / q) - 0.5 * s * (cp / p + cq / q);
            let y = -0.5 * c * (cp / p - cq / q) + 0.5 * s * (sq / q - sp / p);
            acc += Vec2::new(x, y);
        }
        acc
    }

    /// `γ(θ) = basepoint + ∫_0^θ r(τ)(cos τ, sin τ) dτ`, integrated exactly.
    pub fn position(&self, theta: f64) -> Vec2 {
        self.basepoint + self.primitive(theta) - self.primitive(0.0)
    }

    fn scan_resolution(&self) -> usize {
        1024 + 64 * self.max_harmonic() as usize
    }

    fn sign_changes_full_turn(&self) -> usize {
        let m = 2 * self.scan_resolution();
        let signs: Vec<bool> = (0..m)
            .map(|j| self.radius(2.0 * PI * j as f64 / m as f64))
            .filter(|v| *v != 0.0)
            .map(|v| v > 0.0)
            .collect();
        (0..signs.len()).filter(|&j| signs[j] != signs[(j + 1) % signs.len()]).count()
    }

    /// Zeros of `r` on `[0, π)`, refined by bisection.
    pub fn cusps(&self) -> Vec<f64> {
        let m = self.scan_resolution();
        let h = PI / m as f64;
        let r0 = self.radius(0.0);
        let value = |j: usize| if j == m { -r0 } else { self.radius(j as f64 * h) };
        let mut out = Vec::new();
        for j in 0..m {
            let a = value(j);
            let b = value(j + 1);
            if a == 0.0 {
                out.push(j as f64 * h);
                continue;
            }
            if b == 0.0 || (a > 0.0) == (b > 0.0) {
                continue;
            }
            let (mut l, mut r) = (j as f64 * h, (j + 1) as f64 * h);
            for _ in 0..80 {
                let mid = 0.5 * (l + r);
                let fm = self.radius(mid);
                if fm == 0.0 {
                    l = mid;
                    r = mid;
                    break;
                }
                if (fm > 0.0) == (a > 0.0) {
                    l = mid;
                } else {
                    r = mid;
                }
                if r - l < 1e-16 {
                    break;
                }
            }
            out.push(0.5 * (l + r));
        }
        out
    }

    /// `max |r|` and `max |r'|` over a dense grid.
    pub fn radius_bounds(&self) -> (f64, f64) {
        let m = 2 * self.scan_resolution();
        (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).fold((0.0f64, 0.0f64), |(a, b), t| {
            (a.max(self.radius(t).abs()), b.max(self.radius_derivative(t, 1).abs()))
        })
    }
}

/// Midpoint trajectory of a front with its cusps.
#[derive(Clone, Debug)]
pub struct FrontTrace {
    /// `γ` sampled at `θ_j = πj/N`; the curve parameter `x` maps to `θ = x/2`.
    pub midpoints: ClosedCurve,
    /// Tangent angles of the cusps in `[0, π)`.
    pub cusps: Vec<f64>,
    /// `|γ(π) − γ(0)|`.
    pub closure_error: f64,
}

/// Trace the front over one half turn of its tangent line.
pub fn front_eval(front: &WaveFront, n: usize) -> Result<FrontTrace> {
    let samples: Vec<Vec2> = (0..n).map(|j| front.position(PI * j as f64 / n as f64)).collect();
    let midpoints = ClosedCurve::new(samples, false)?;
    let cusps = front.cusps();
    if cusps.len().is_multiple_of(2) {
        return Err(Error::InvalidFront(format!("found {} cusps; expected an odd count", cusps.len())));
    }
    Ok(FrontTrace { midpoints, cusps, closure_error: front.position(PI).dist(front.position(0.0)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ellipse(n: usize) -> ClosedCurve {
        ClosedCurve::from_fn(n, false, |t| Vec2::new(2.0 * t.cos(), t.sin())).unwrap()
    }

    #[test]
    fn rejects_bad_sample_sets() {
        let pts: Vec<Vec2> = (0..63).map(|j| Vec2::from_angle(j as f64)).collect();
        assert!(ClosedCurve::new(pts, false).is_err());
        let mut pts: Vec<Vec2> = spectral::grid(64).into_iter().map(Vec2::from_angle).collect();
        pts[5] = pts[4];
        assert!(matches!(ClosedCurve::new(pts, false), Err(Error::InvalidCurve(_))));
        // an ellipse in its standard parametrization is not arc-length
        let pts: Vec<Vec2> = spectral::grid(64).into_iter().map(|t| Vec2::new(2.0 * t.cos(), t.sin())).collect();
        assert!(ClosedCurve::new(pts, true).is_err());
    }

    #[test]
    fn circle_curvature() {
        for (radius, expected) in [(1.0, 1.0), (2.0, 0.5)] {
            let c = ClosedCurve::circle(256, Vec2::new(0.3, -1.0), radius).unwrap();
            for k in curvature(&c) {
                assert!((k - expected).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn ellipse_curvature_at_major_axis() {
        // ab / (a² sin²t + b² cos²t)^{3/2} at t = 0 with a = 2, b = 1
        let expected = 2.0 / 1.0f64.powf(1.5);
        let k = curvature(&ellipse(256));
        assert!((k[0] - expected).abs() < 1e-9);
        let t = spectral::grid(256)[37];
        let closed = 2.0 / (4.0 * t.sin().powi(2) + t.cos().powi(2)).powf(1.5);
        assert!((k[37] - closed).abs() < 1e-9);
    }

    #[test]
    fn total_turning_is_two_pi() {
        let e = ellipse(256);
        assert!((e.total_turning() - 2.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn resample_circle_rescaled() {
        let c = ClosedCurve::circle(128, Vec2::ZERO, 3.0).unwrap();
        let r = resample_arclength(&c, 128, true).unwrap();
        assert!((r.length() - 2.0 * PI).abs() < 1e-12);
        for p in r.samples() {
            assert!((p.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn resample_preserves_length_and_is_idempotent() {
        let e = ellipse(256);
        let len = e.length();
        let r = resample_arclength(&e, 512, false).unwrap();
        assert!(r.is_arclength());
        assert!(((r.length() - len) / len).abs() < 1e-8);
        let rr = resample_arclength(&r, 512, false).unwrap();
        for (a, b) in r.samples().iter().zip(rr.samples()) {
            assert!(a.dist(*b) < 1e-9);
        }
    }

    #[test]
    fn vertex_detection() {
        let e = resample_arclength(&ellipse(256), 256, false).unwrap();
        let v = vertices(&e).unwrap();
        assert!(!v.circle);
        assert_eq!(v.count(), 4);
        let (sx, sy) = e.coordinate_series();
        for &x in &v.params {
            let p = Vec2::new(sx.eval(x), sy.eval(x));
            assert!(p.x.abs() < 1e-7 || p.y.abs() < 1e-7, "vertex {p:?} off the axes");
        }
        let circle = ClosedCurve::circle(128, Vec2::ZERO, 1.0).unwrap();
        let v = vertices(&circle).unwrap();
        assert!(v.circle && v.params.is_empty());
        assert_eq!(vertices(&ellipse(128)), Err(Error::NotArclength));
    }

    #[test]
    fn front_validation() {
        assert!(WaveFront::new(BTreeMap::from([(2, (1.0, 0.0))]), Vec2::ZERO).is_err());
        assert!(WaveFront::new(BTreeMap::from([(1, (1.0, 0.0))]), Vec2::ZERO).is_err());
        assert!(WaveFront::new(BTreeMap::from([(3, (0.0, 0.0))]), Vec2::ZERO).is_err());
        assert!(WaveFront::cosine(3, 1.0).is_ok());
    }

    #[test]
    fn cos3_front() {
        let front = WaveFront::cosine(3, 1.0).unwrap();
        let trace = front_eval(&front, 256).unwrap();
        assert!(trace.closure_error < 1e-12);
        let expected = [PI / 6.0, PI / 2.0, 5.0 * PI / 6.0];
        assert_eq!(trace.cusps.len(), 3);
        for (c, e) in trace.cusps.iter().zip(expected) {
            assert!((c - e).abs() < 1e-12);
        }
    }

    #[test]
    fn front_position_matches_quadrature() {
        let front = WaveFront::new(BTreeMap::from([(3, (1.0, 0.0)), (5, (0.0, 0.2))]), Vec2::new(0.5, -0.25)).unwrap();
        // composite Simpson on a fine grid as an independent check
        let theta = 2.1;
        let m = 20_000;
        let h = theta / m as f64;
        let integrand = |t: f64| Vec2::from_angle(t) * front.radius(t);
        let mut acc = integrand(0.0) + integrand(theta);
        for j in 1..m {
            let w = if j % 2 == 1 { 4.0 } else { 2.0 };
            acc += integrand(j as f64 * h) * w;
        }
        let simpson = front.basepoint() + acc * (h / 3.0);
        assert!(front.position(theta).dist(simpson) < 1e-12);
        let trace = front_eval(&front, 256).unwrap();
        assert!(trace.closure_error < 1e-9);
        assert_eq!(trace.cusps.len() % 2, 1);
    }

    #[test]
    fn sine_front_cusp_at_zero() {
        let front = WaveFront::new(BTreeMap::from([(3, (0.0, 1.0))]), Vec2::ZERO).unwrap();
        let cusps = front.cusps();
        assert_eq!(cusps.len(), 3);
        assert!(cusps[0].abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let e = ellipse(64);
        let text = serde_json::to_string(&e).unwrap();
        let back: ClosedCurve = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
        let front: WaveFront =
            serde_json::from_str(r#"{"harmonics": {"3": [1.0, 0.0], "5": [0.0, 0.2]}, "basepoint": [0, 0]}"#).unwrap();
        assert_eq!(front.max_harmonic(), 5);
        let bad = serde_json::from_str::<WaveFront>(r#"{"harmonics": {"4": [1.0, 0.0]}}"#);
        assert!(bad.unwrap_err().to_string().contains("harmonics"));
    }
}
