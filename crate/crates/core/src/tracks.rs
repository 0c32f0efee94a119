//! Rear/front bicycle tracks and bicycle-curve verification.
//!
//! The bicycle is a segment of length `L` that stays tangent to the rear
//! track `γ`; the front track is `Γ = γ + L·T` and the track left by riding
//! `γ` the other way is `Γ̄ = γ − L·T`. A bicycle curve `Γ` of perimeter `2π`
//! and rotation number `ρ` carries chords `Γ(x)Γ(x + 2ω)`, `ω = πρ`, of
//! constant length `2L`; `α(x)` is the angle from the tangent at `Γ(x)` to
//! that chord.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curves::{self, zip_vec, ClosedCurve, WaveFront};
use crate::distance::hausdorff;
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::spectral::{self, TrigSeries};

/// Default verification tolerance for constructed curves.
pub const CONSTRUCTED_TOL: f64 = 1e-8;
/// Default verification tolerance for curves read from files.
pub const FILE_TOL: f64 = 1e-6;

/// Rotation number and chord of a bicycle curve of perimeter `2π`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicycleConfig {
    pub rho: f64,
    pub omega: f64,
    pub half_chord: f64,
}

impl BicycleConfig {
    pub fn new(rho: f64, half_chord: f64) -> Result<Self> {
        if !(rho > 0.0 && rho <= 0.5) {
            return Err(Error::arg("rho", format!("must lie in (0, 1/2], got {rho}")));
        }
        if !(half_chord > 0.0 && half_chord.is_finite()) {
            return Err(Error::arg("half_chord", format!("must be positive, got {half_chord}")));
        }
        Ok(BicycleConfig { rho, omega: PI * rho, half_chord })
    }

    /// `L ≤ sin ω`, which every bicycle curve satisfies (equality for circles).
    pub fn satisfies_chord_bound(&self, tol: f64) -> bool {
        self.half_chord <= self.omega.sin() + tol
    }
}

/// Chord–tangent angle `α(x)` on a uniform grid over `[0, 2π)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaProfile {
    pub alpha: Vec<f64>,
}

impl AlphaProfile {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.len() < 4 || !alpha.len().is_multiple_of(2) {
            return Err(Error::arg("alpha", "need an even number of samples >= 4"));
        }
        if alpha.iter().any(|a| !a.is_finite()) {
            return Err(Error::arg("alpha", "samples must be finite"));
        }
        Ok(AlphaProfile { alpha })
    }

    /// `β = α − π/2`.
    pub fn beta(&self) -> Vec<f64> {
        self.alpha.iter().map(|a| a - PI / 2.0).collect()
    }
}

fn offset(points: &[Vec2], tangents: &[Vec2], length: f64) -> Vec<Vec2> {
    points.iter().zip(tangents).map(|(&p, &t)| p + t * length).collect()
}

fn offset_track(gamma: &ClosedCurve, length: f64) -> Result<ClosedCurve> {
    if !gamma.is_arclength() {
        return Err(Error::NotArclength);
    }
    if !length.is_finite() {
        return Err(Error::arg("L", "must be finite"));
    }
    if length == 0.0 {
        return Ok(gamma.clone());
    }
    ClosedCurve::new(offset(gamma.samples(), &gamma.unit_tangents(), length), false)
}

/// `Γ = γ + L·γ_t` on the parameter grid of `γ`.
pub fn front_track(gamma: &ClosedCurve, length: f64) -> Result<ClosedCurve> {
    offset_track(gamma, length)
}

/// `Γ̄ = γ − L·γ_t`, the front track of the opposite ride along `γ`.
pub fn reverse_front_track(gamma: &ClosedCurve, length: f64) -> Result<ClosedCurve> {
    offset_track(gamma, -length)
}

/// Speed of a track relative to the arc length of the rear track it was
/// built from: `|Γ_t|` at every sample.
pub fn track_speed(gamma: &ClosedCurve, track: &ClosedCurve) -> Vec<f64> {
    gamma.speed().iter().zip(track.speed()).map(|(g, t)| t / g).collect()
}

/// Curvature `k` of an arc-length curve and its arc-length derivative `k_t`.
pub fn curvature_and_derivative(gamma: &ClosedCurve) -> (Vec<f64>, Vec<f64>) {
    let k = curves::curvature(gamma);
    let speed = gamma.speed();
    let dk = spectral::derivative(&k, 1);
    let kt = dk.iter().zip(&speed).map(|(d, s)| d / s).collect();
    (k, kt)
}

/// Curvature of the front track from the rear curvature and its derivative:
/// `κ = (k + L k_t + L² k³) / (1 + L² k²)^{3/2}`.
pub fn front_curvature_pointwise(k: f64, kt: f64, length: f64) -> f64 {
    let l = length;
    (k + l * kt + l * l * k.powi(3)) / (1.0 + l * l * k * k).powf(1.5)
}

/// Hausdorff distance between the front tracks of the two rides along `γ`.
pub fn ambiguity_distance(gamma: &ClosedCurve, length: f64) -> Result<f64> {
    let forward = front_track(gamma, length)?;
    let backward = reverse_front_track(gamma, length)?;
    Ok(hausdorff(&forward, &backward))
}

/// Whether `(γ, front_track(γ, L))` is an ambiguous pair: riding `γ` in
/// either direction leaves the same front track (to within `tol`).
pub fn is_ambiguous_pair(gamma: &ClosedCurve, length: f64, tol: f64) -> Result<bool> {
    Ok(ambiguity_distance(gamma, length)? <= tol)
}

/// Front tracks of the two rides along a wave front.
///
/// The segment keeps the continuous orientation `(cos θ, sin θ)` of the
/// front's tangent line through the cusps, and the rear wheel goes around the
/// front twice (`θ ∈ [0, 2π)`) so that the segment returns to its initial
/// orientation.
pub fn wavefront_tracks(front: &WaveFront, length: f64, n: usize) -> Result<(ClosedCurve, ClosedCurve)> {
    let grid = spectral::grid(n);
    let points: Vec<Vec2> = grid.iter().map(|&t| front.position(t)).collect();
    let dirs: Vec<Vec2> = grid.iter().map(|&t| Vec2::from_angle(t)).collect();
    Ok((
        ClosedCurve::new(offset(&points, &dirs, length), false)?,
        ClosedCurve::new(offset(&points, &dirs, -length), false)?,
    ))
}

/// Ambiguity test for a wave-front rear track.
pub fn is_ambiguous_front(front: &WaveFront, length: f64, n: usize, tol: f64) -> Result<bool> {
    let (forward, backward) = wavefront_tracks(front, length, n)?;
    Ok(hausdorff(&forward, &backward) <= tol)
}

/// Chord lengths and the chord–tangent angles at both chord endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct ChordProfile {
    /// `|Γ(x + 2ω) − Γ(x)|`.
    pub chord: Vec<f64>,
    /// Angle from the tangent at `Γ(x)` to the chord.
    pub alpha_start: Vec<f64>,
    /// Angle from the chord to the tangent at `Γ(x + 2ω)`.
    pub alpha_end: Vec<f64>,
}

fn check_normalized(gamma: &ClosedCurve) -> Result<()> {
    if !gamma.is_arclength() {
        return Err(Error::NotArclength);
    }
    let perimeter = gamma.length();
    if ((perimeter - 2.0 * PI) / (2.0 * PI)).abs() > 1e-8 {
        return Err(Error::PerimeterNotNormalized { perimeter });
    }
    Ok(())
}

/// Chord profile of an arc-length curve of perimeter `2π` at half-arc `ω`.
/// Values at `x + 2ω` come from trigonometric interpolation.
pub fn chord_angles(gamma: &ClosedCurve, omega: f64) -> Result<ChordProfile> {
    check_normalized(gamma)?;
    let shift = 2.0 * omega;
    let (sx, sy) = gamma.coordinate_series();
    let ahead = zip_vec(&sx.shifted_samples(shift), &sy.shifted_samples(shift));
    let d1 = gamma.derivative(1);
    let dx = TrigSeries::from_samples(&d1.iter().map(|v| v.x).collect::<Vec<_>>());
    let dy = TrigSeries::from_samples(&d1.iter().map(|v| v.y).collect::<Vec<_>>());
    let tangent_ahead = zip_vec(&dx.shifted_samples(shift), &dy.shifted_samples(shift));

    let n = gamma.len();
    let mut profile = ChordProfile {
        chord: Vec::with_capacity(n),
        alpha_start: Vec::with_capacity(n),
        alpha_end: Vec::with_capacity(n),
    };
    for j in 0..n {
        let chord = ahead[j] - gamma.samples()[j];
        profile.chord.push(chord.norm());
        profile.alpha_start.push(d1[j].angle_to(chord));
        profile.alpha_end.push(chord.angle_to(tangent_ahead[j]));
    }
    Ok(profile)
}

/// `c(x) = |Γ(x + 2ω) − Γ(x)|`.
pub fn chord_profile(gamma: &ClosedCurve, omega: f64) -> Result<Vec<f64>> {
    Ok(chord_angles(gamma, omega)?.chord)
}

/// The chord–tangent angle `α(x)` of a curve at half-arc `ω`.
pub fn alpha_profile(gamma: &ClosedCurve, omega: f64) -> Result<AlphaProfile> {
    AlphaProfile::new(chord_angles(gamma, omega)?.alpha_start)
}

/// Deviation of a curve from the bicycle property.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicycleResidual {
    /// `max c − min c` over the chord profile.
    pub length_spread: f64,
    /// `max |α_start − α_end|`.
    pub angle_spread: f64,
    /// Half the mean chord length.
    pub half_chord: f64,
}

impl BicycleResidual {
    pub fn passes(&self, tol: f64) -> bool {
        self.length_spread < tol
    }
}

fn require_convex(gamma: &ClosedCurve) -> Result<bool> {
    let kappa = curves::curvature(gamma);
    let (lo, hi) = kappa.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &k| (a.min(k), b.max(k)));
    if lo > 0.0 {
        Ok(true)
    } else if hi < 0.0 {
        Ok(false)
    } else {
        Err(Error::NotConvex { min_curvature: lo, max_curvature: hi })
    }
}

/// Reverse the traversal direction, keeping the first sample in place.
fn reversed(gamma: &ClosedCurve) -> Result<ClosedCurve> {
    let s = gamma.samples();
    let pts = std::iter::once(s[0]).chain(s[1..].iter().rev().copied()).collect();
    ClosedCurve::new(pts, gamma.is_arclength())
}

/// Measure how far a convex curve of perimeter `2π` is from being a bicycle
/// curve with rotation number `ρ`. Clockwise curves are measured after
/// reversing their orientation.
pub fn bicycle_residual(gamma: &ClosedCurve, rho: f64) -> Result<BicycleResidual> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::arg("rho", format!("must lie in (0, 1), got {rho}")));
    }
    check_normalized(gamma)?;
    let ccw = require_convex(gamma)?;
    let oriented;
    let gamma = if ccw {
        gamma
    } else {
        oriented = reversed(gamma)?;
        &oriented
    };
    let profile = chord_angles(gamma, PI * rho)?;
    let (lo, hi) = min_max(&profile.chord);
    let angle_spread =
        profile.alpha_start.iter().zip(&profile.alpha_end).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let mean = profile.chord.iter().sum::<f64>() / profile.chord.len() as f64;
    Ok(BicycleResidual { length_spread: hi - lo, angle_spread, half_chord: 0.5 * mean })
}

pub(crate) fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)))
}

/// Residual of `sin α(x+ω) − sin α(x−ω) = L (α′(x+ω) + α′(x−ω))`, maximized
/// over the grid.
pub fn alpha_equation_residual(alpha: &AlphaProfile, omega: f64, half_chord: f64) -> f64 {
    let series = TrigSeries::from_samples(&alpha.alpha);
    let dseries = TrigSeries::from_samples(&series.derivative_samples(1));
    let ahead = series.shifted_samples(omega);
    let behind = series.shifted_samples(-omega);
    let dahead = dseries.shifted_samples(omega);
    let dbehind = dseries.shifted_samples(-omega);
    (0..alpha.alpha.len())
        .map(|j| {
            let lhs = ahead[j].sin() - behind[j].sin();
            let rhs = half_chord * (dahead[j] + dbehind[j]);
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max)
}

/// Length comparison between a rear track and its front track.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthGap {
    /// `length Γ − length γ`.
    pub gap: f64,
    /// `L ∮ |k| dt`.
    pub upper_bound: f64,
    /// `0 < gap < upper_bound`.
    pub holds: bool,
}

/// Compare `length(front_track(γ, L))` with `length(γ)`.
pub fn length_gap(gamma: &ClosedCurve, length: f64) -> Result<LengthGap> {
    let front = front_track(gamma, length)?;
    let gap = front.length() - gamma.length();
    let kappa = curves::curvature(gamma);
    let speed = gamma.speed();
    let n = kappa.len() as f64;
    let total_abs = kappa.iter().zip(&speed).map(|(k, s)| k.abs() * s).sum::<f64>() * 2.0 * PI / n;
    let upper_bound = length.abs() * total_abs;
    Ok(LengthGap { gap, upper_bound, holds: gap > 0.0 && gap < upper_bound })
}

/// Vertex and chord consequences that every bicycle curve must satisfy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub rho: f64,
    pub vertex_count: usize,
    /// Constant curvature: every point is a vertex.
    pub circle: bool,
    /// Largest arc between consecutive vertices.
    pub max_vertex_gap: f64,
    /// Every arc of length `2ω` contains a vertex.
    pub window_contains_vertex: bool,
    /// At least six vertices (or a circle).
    pub six_vertices: bool,
    /// Half of the mean chord length.
    pub half_chord: f64,
    /// `L ≤ sin ω`.
    pub chord_bound: bool,
    /// `sin ω − L`.
    pub chord_bound_slack: f64,
    /// Present when a rear track was supplied.
    pub length_gap: Option<LengthGap>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.window_contains_vertex && self.six_vertices && self.chord_bound && self.length_gap.is_none_or(|g| g.holds)
    }
}

/// Slack allowed on the chord bound for rounding (equality holds for circles).
const CHORD_BOUND_SLACK: f64 = 1e-9;

/// Run the vertex, chord-bound and (optionally) track-length checks on a
/// bicycle curve of perimeter `2π`.
pub fn necessary_conditions(
    gamma: &ClosedCurve,
    rho: f64,
    rear: Option<(&ClosedCurve, f64)>,
) -> Result<ConditionReport> {
    let omega = PI * rho;
    let vertices = curves::vertices(gamma)?;
    let chords = chord_profile(gamma, omega)?;
    let half_chord = 0.5 * chords.iter().sum::<f64>() / chords.len() as f64;
    let max_vertex_gap = if vertices.circle { 0.0 } else { vertices.max_gap() };
    let length_gap = rear.map(|(g, l)| length_gap(g, l)).transpose()?;
    Ok(ConditionReport {
        rho,
        vertex_count: vertices.count(),
        circle: vertices.circle,
        max_vertex_gap,
        window_contains_vertex: vertices.circle || max_vertex_gap <= 2.0 * omega,
        six_vertices: vertices.circle || vertices.count() >= 6,
        half_chord,
        chord_bound: half_chord <= omega.sin() + CHORD_BOUND_SLACK,
        chord_bound_slack: omega.sin() - half_chord,
        length_gap,
    })
}
