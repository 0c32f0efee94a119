//! Bicycle curves with rotation number 1/2 built from wave fronts.
//!
//! A segment of length `2L` slides with its midpoint on a front `γ` while
//! staying tangent to it. With the front in tangent-angle form
//! `γ'(θ) = r(θ)(cos θ, sin θ)`, the endpoints trace
//! `Γ(θ) = γ(θ) + L(cos θ, sin θ)` for `θ ∈ [0, 2π)`. Both endpoints move at
//! speed `√(r² + L²)`, so every such segment bisects the perimeter and has
//! constant length: `Γ` is a bicycle curve with `ρ = 1/2` whenever it is
//! convex. Its curvature is `(r² + L² − L r′)/(r² + L²)^{3/2}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curves::{ClosedCurve, WaveFront};
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::spectral::TrigSeries;
use crate::tracks::{self, AlphaProfile};

/// Output of [`construct`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Construction {
    /// `Γ` by arc length, scaled about the origin to perimeter `2π`.
    pub curve: ClosedCurve,
    /// Half-chord after scaling.
    pub half_chord: f64,
    /// Scale factor applied to reach perimeter `2π`.
    pub scale: f64,
    /// Tangent angle `θ` of the front at every output sample.
    pub theta: Vec<f64>,
    /// Whether `Γ` has strictly positive curvature.
    pub convex: bool,
    /// Smallest value of `r² + L² − L r′` over a dense grid (before scaling).
    pub min_curvature_numerator: f64,
    /// Mismatch of the unit tangents where the two endpoint halves meet.
    pub junction_mismatch: f64,
}

/// `r² + L² − L r′`, the sign of the curvature of `Γ` at `θ`. Regular at
/// cusps, where the front curvature `1/r` blows up.
pub fn curvature_numerator(front: &WaveFront, half_chord: f64, theta: f64) -> f64 {
    let r = front.radius(theta);
    let dr = front.radius_derivative(theta, 1);
    r * r + half_chord * half_chord - half_chord * dr
}

/// Curvature of `Γ` at tangent angle `θ`, before scaling.
pub fn endpoint_curvature(front: &WaveFront, half_chord: f64, theta: f64) -> f64 {
    let r = front.radius(theta);
    curvature_numerator(front, half_chord, theta) / (r * r + half_chord * half_chord).powf(1.5)
}

fn dense_grid(front: &WaveFront) -> usize {
    4096 + 256 * front.max_harmonic() as usize
}

/// Minimum of the curvature numerator over `[0, 2π)`, with every local
/// minimum of a dense scan refined by golden-section search.
pub fn min_curvature_numerator(front: &WaveFront, half_chord: f64) -> f64 {
    let m = dense_grid(front);
    let h = 2.0 * PI / m as f64;
    let q = |t: f64| curvature_numerator(front, half_chord, t);
    let values: Vec<f64> = (0..m).map(|j| q(j as f64 * h)).collect();
    let mut best = values.iter().copied().fold(f64::INFINITY, f64::min);
    for j in 0..m {
        let prev = values[(j + m - 1) % m];
        let next = values[(j + 1) % m];
        if values[j] <= prev && values[j] <= next {
            best = best.min(golden_min(&q, (j as f64 - 1.0) * h, (j as f64 + 1.0) * h));
        }
    }
    best
}

fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
        if b - a < 1e-14 {
            break;
        }
    }
    fc.min(fd)
}

/// Construct the bicycle curve swept by the endpoints of a segment of
/// half-length `half_chord` tangent to `front`, sampled at `n` arc-length
/// points and normalized to perimeter `2π`.
///
/// Non-convex results are returned with `convex == false`.
pub fn construct(front: &WaveFront, half_chord: f64, n: usize) -> Result<Construction> {
    if !(half_chord > 0.0 && half_chord.is_finite()) {
        return Err(Error::arg("L", format!("must be positive, got {half_chord}")));
    }
    if n < ClosedCurve::MIN_SAMPLES || !n.is_multiple_of(2) {
        return Err(Error::arg("n", format!("need an even count >= 64, got {n}")));
    }
    let l = half_chord;
    let endpoint = |t: f64| front.position(t) + Vec2::from_angle(t) * l;

    // arc length s(θ) = ∫ √(r² + L²): the integrand is π-periodic and analytic
    let m = 8 * n.max(dense_grid(front) / 2);
    let m = m + m % 2;
    let speed: Vec<f64> = (0..m)
        .map(|j| {
            let r = front.radius(2.0 * PI * j as f64 / m as f64);
            (r * r + l * l).sqrt()
        })
        .collect();
    let speed = TrigSeries::from_samples(&speed);
    let perimeter = 2.0 * PI * speed.mean();

    let mut theta = Vec::with_capacity(n);
    let mut t = 0.0;
    for j in 0..n {
        let target = perimeter * j as f64 / n as f64;
        if j > 0 {
            t = invert(&speed, target, t);
        }
        theta.push(t);
    }
    let scale = 2.0 * PI / perimeter;
    let samples: Vec<Vec2> = theta.iter().map(|&t| endpoint(t) * scale).collect();
    let curve = ClosedCurve::new(samples, true)?;

    let min_num = min_curvature_numerator(front, l);

    // half 1 ends at θ = π with the + endpoint; half 2 starts at θ = 0 with the − endpoint
    let tangent = |t: f64, sign: f64| {
        (Vec2::from_angle(t) * front.radius(t) + Vec2::from_angle(t).perp() * (sign * l)).normalized()
    };
    let junction_mismatch = tangent(PI, 1.0).dist(tangent(0.0, -1.0));

    Ok(Construction {
        curve,
        half_chord: l * scale,
        scale,
        theta,
        convex: min_num > 0.0,
        min_curvature_numerator: min_num,
        junction_mismatch,
    })
}

fn invert(speed: &TrigSeries, target: f64, start: f64) -> f64 {
    let mut lo = start;
    let mut hi = 2.0 * PI;
    let mut t = start + (target - speed.eval_integral(start)) / speed.eval(start);
    for _ in 0..100 {
        if !(t > lo && t < hi) {
            t = 0.5 * (lo + hi);
        }
        let res = speed.eval_integral(t) - target;
        if res > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let step = res / speed.eval(t);
        if step.abs() < 1e-15 * (1.0 + t) {
            return t - step;
        }
        t -= step;
    }
    t
}

/// Smallest half-chord for which the swept curve is convex, by bisection of
/// the sign of the curvature numerator on `[0, max(10·max|r|, 2·max|r′|)]`.
pub fn min_convex_l(front: &WaveFront) -> f64 {
    let (max_r, max_dr) = front.radius_bounds();
    let mut lo = 0.0;
    let mut hi = (10.0 * max_r).max(2.0 * max_dr);
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if min_curvature_numerator(front, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Chord–tangent angle of the constructed curve at `ω = π/2`, measured on
/// the curve samples.
pub fn alpha_of(front: &WaveFront, half_chord: f64, n: usize) -> Result<(AlphaProfile, Construction)> {
    let built = construct(front, half_chord, n)?;
    if !built.convex {
        let kappa = crate::curves::curvature(&built.curve);
        let (lo, hi) = tracks::min_max(&kappa);
        return Err(Error::NotConvex { min_curvature: lo, max_curvature: hi });
    }
    let alpha = tracks::alpha_profile(&built.curve, PI / 2.0)?;
    Ok((alpha, built))
}

/// Envelope of the chords `Γ(x)Γ(x + π)` of an arc-length curve of perimeter
/// `2π`, from the line-family formula `p + s·d` with `s = −(p′ × d)/(d′ × d)`.
pub fn bisecting_envelope(gamma: &ClosedCurve) -> Result<Vec<Vec2>> {
    let n = gamma.len();
    let half = n / 2;
    let pts = gamma.samples();
    let d1 = gamma.derivative(1);
    let d: Vec<Vec2> = (0..n).map(|j| pts[(j + half) % n] - pts[j]).collect();
    let dd: Vec<Vec2> = (0..n).map(|j| d1[(j + half) % n] - d1[j]).collect();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let denom = dd[j].cross(d[j]);
        if denom == 0.0 {
            return Err(Error::InvalidCurve(format!("chord {j} does not rotate")));
        }
        let s = -d1[j].cross(d[j]) / denom;
        out.push(pts[j] + d[j] * s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{curvature, front_eval};
    use crate::distance::hausdorff;
    use crate::tracks::{alpha_equation_residual, bicycle_residual, chord_profile, necessary_conditions};
    use std::collections::BTreeMap;

    fn two_harmonic() -> WaveFront {
        WaveFront::new(BTreeMap::from([(3, (1.0, 0.0)), (5, (0.0, 0.3))]), Vec2::ZERO).unwrap()
    }

    fn symmetry_defect(alpha: &AlphaProfile) -> f64 {
        let n = alpha.alpha.len();
        let q = n / 4;
        (0..n).map(|j| (alpha.alpha[(j + n - q) % n] + alpha.alpha[(j + q) % n] - PI).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn cos3_threshold_is_three() {
        // at a cusp r = 0 and |r′| = 3, so the numerator L² − 3L needs L > 3
        let front = WaveFront::cosine(3, 1.0).unwrap();
        assert!((min_convex_l(&front) - 3.0).abs() < 1e-6);
    }

    #[test]
    fn threshold_scales_linearly() {
        let base = min_convex_l(&WaveFront::cosine(3, 1.0).unwrap());
        for lambda in [0.1, 0.5, 2.0] {
            let scaled = min_convex_l(&WaveFront::cosine(3, lambda).unwrap());
            assert!((scaled - lambda * base).abs() < 1e-6 * (1.0 + lambda));
        }
    }

    #[test]
    fn convexity_flag_brackets_threshold() {
        let front = WaveFront::cosine(3, 1.0).unwrap();
        let l = min_convex_l(&front);
        let above = construct(&front, 1.01 * l, 256).unwrap();
        assert!(above.convex);
        assert!(curvature(&above.curve).iter().all(|&k| k > 0.0));
        let below = construct(&front, 0.99 * l, 256).unwrap();
        assert!(!below.convex);
        assert!(curvature(&below.curve).iter().any(|&k| k < 0.0));
    }

    #[test]
    fn analytic_curvature_matches_spectral() {
        let front = WaveFront::cosine(3, 1.0).unwrap();
        let built = construct(&front, 4.0, 512).unwrap();
        let kappa = curvature(&built.curve);
        for (j, &t) in built.theta.iter().enumerate() {
            let expected = endpoint_curvature(&front, 4.0, t) / built.scale;
            assert!((kappa[j] - expected).abs() < 1e-8);
        }
    }

    #[test]
    fn construction_is_normalized_and_smooth() {
        let front = WaveFront::cosine(3, 1.0).unwrap();
        let built = construct(&front, 4.0, 512).unwrap();
        assert!((built.curve.length() - 2.0 * PI).abs() < 1e-10);
        assert!(built.junction_mismatch < 1e-6);
        assert!((built.half_chord - 4.0 * built.scale).abs() < 1e-15);
    }

    #[test]
    fn small_fronts_give_nearly_circles() {
        let mut previous = f64::INFINITY;
        for lambda in [1e-1, 1e-2, 1e-3] {
            let front = WaveFront::cosine(3, lambda).unwrap();
            let built = construct(&front, 1.0, 256).unwrap();
            let dev = curvature(&built.curve).iter().map(|k| (k - 1.0).abs()).fold(0.0, f64::max);
            assert!(dev < previous);
            previous = dev;
        }
        assert!(previous < 1e-2);
    }

    #[test]
    fn alpha_rejects_nonconvex() {
        let front = WaveFront::cosine(3, 1.0).unwrap();
        assert!(matches!(alpha_of(&front, 2.0, 256), Err(Error::NotConvex { .. })));
    }

    #[test]
    fn cos3_passes_bicycle_checks() {
        let front = WaveFront::cosine(3, 1.0).unwrap();
        let (alpha, built) = alpha_of(&front, 4.0, 512).unwrap();
        let res = bicycle_residual(&built.curve, 0.5).unwrap();
        assert!(res.length_spread < 1e-8 && res.angle_spread < 1e-8, "{res:?}");
        assert!((res.half_chord - built.half_chord).abs() < 1e-8);
        let chords = chord_profile(&built.curve, 0.5 * PI).unwrap();
        assert!(chords.iter().all(|c| (c - 2.0 * built.half_chord).abs() < 1e-8));
        assert!(symmetry_defect(&alpha) < 1e-8);
        assert!(alpha_equation_residual(&alpha, 0.5 * PI, built.half_chord) < 1e-8);
        let report = necessary_conditions(&built.curve, 0.5, None).unwrap();
        assert!(report.all_pass() && report.vertex_count >= 6 && !report.circle, "{report:?}");
    }

    #[test]
    fn two_harmonic_front_end_to_end() {
        let front = two_harmonic();
        let l = min_convex_l(&front) + 0.01;
        let built = construct(&front, l, 512).unwrap();
        assert!(built.convex);
        assert!(bicycle_residual(&built.curve, 0.5).unwrap().length_spread < 1e-8);
        let kappa = curvature(&built.curve);
        let (lo, hi) = tracks::min_max(&kappa);
        assert!(hi - lo > 1e-3);
    }

    #[test]
    fn envelope_recovers_front() {
        let front = two_harmonic();
        let built = construct(&front, min_convex_l(&front) + 0.5, 512).unwrap();
        let env = ClosedCurve::new(bisecting_envelope(&built.curve).unwrap(), false).unwrap();
        let trace = front_eval(&front, 512).unwrap();
        let scaled: Vec<Vec2> = trace.midpoints.samples().iter().map(|&p| p * built.scale).collect();
        let target = ClosedCurve::new(scaled, false).unwrap();
        assert!(hausdorff(&env, &target) < 1e-5);
    }

    #[test]
    fn tiny_front_has_diameter_chords() {
        let front = WaveFront::cosine(3, 1e-6).unwrap();
        let (alpha, _) = alpha_of(&front, 1.0, 256).unwrap();
        assert!(alpha.alpha.iter().all(|a| (a - 0.5 * PI).abs() < 1e-5));
    }

    #[test]
    fn constructed_pair_is_ambiguous() {
        let front = WaveFront::cosine(3, 1.0).unwrap();
        assert!(tracks::is_ambiguous_front(&front, 4.0, 512, 1e-6).unwrap());
    }
}
