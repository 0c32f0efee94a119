//! Bicycle `(n, k)`-gons: equilateral polygons whose `k`-diagonals all have
//! the same length.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::tracks::min_max;

/// Default tolerance for [`verify`].
pub const VERIFY_TOL: f64 = 1e-9;
/// Largest concyclicity residual accepted by [`petrunin_arcs`].
pub const CONCYCLIC_TOL: f64 = 1e-8;

/// A closed polygon with cyclically indexed vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonRepr", into = "PolygonRepr")]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr {
    vertices: Vec<Vec2>,
}

impl TryFrom<PolygonRepr> for Polygon {
    type Error = Error;
    fn try_from(r: PolygonRepr) -> Result<Self> {
        Polygon::new(r.vertices)
    }
}

impl From<Polygon> for PolygonRepr {
    fn from(p: Polygon) -> Self {
        PolygonRepr { vertices: p.vertices }
    }
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("need at least 3 vertices, got {n}")));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidPolygon(format!("vertex {i} is not finite")));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidPolygon(format!("vertices {i} and {} coincide", (i + 1) % n)));
            }
        }
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `V_i` with cyclic indexing.
    pub fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.vertices.len()]
    }

    /// `|V_{i+k} − V_i|` for every `i`.
    pub fn diagonals(&self, k: usize) -> Vec<f64> {
        (0..self.len()).map(|i| self.vertex(i).dist(self.vertex(i + k))).collect()
    }

    pub fn sides(&self) -> Vec<f64> {
        self.diagonals(1)
    }

    /// Strictly convex and simple: all turns have one sign and the total
    /// turning is `±2π`.
    pub fn is_convex(&self) -> bool {
        let n = self.len();
        let edge = |i: usize| self.vertex(i + 1) - self.vertex(i);
        let turns: Vec<f64> = (0..n).map(|i| edge(i).angle_to(edge(i + 1))).collect();
        let all_left = turns.iter().all(|&t| t > 0.0);
        let all_right = turns.iter().all(|&t| t < 0.0);
        let total: f64 = turns.iter().sum();
        (all_left || all_right) && (total.abs() - 2.0 * PI).abs() < 1e-6
    }

    pub fn centroid(&self) -> Vec2 {
        self.vertices.iter().fold(Vec2::ZERO, |a, &v| a + v) / self.len() as f64
    }
}

/// Regular `n`-gon with vertices `R(cos 2πi/n, sin 2πi/n)`.
pub fn regular(n: usize, circumradius: f64) -> Result<Polygon> {
    if n < 3 {
        return Err(Error::arg("n", format!("need n >= 3, got {n}")));
    }
    if !(circumradius > 0.0 && circumradius.is_finite()) {
        return Err(Error::arg("circumradius", format!("must be positive, got {circumradius}")));
    }
    Polygon::new((0..n).map(|i| Vec2::from_angle(2.0 * PI * i as f64 / n as f64) * circumradius).collect())
}

/// Shape of the quadrilateral `V_i V_{i+1} V_{i+k} V_{i+k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadClass {
    /// `V_{i+1} − V_i = V_{i+k+1} − V_{i+k}`.
    Parallelogram,
    /// Equal legs `V_iV_{i+1}`, `V_{i+k}V_{i+k+1}`, equal diagonals, and
    /// parallel bases `V_{i+1}V_{i+k}`, `V_{i+k+1}V_i`.
    IsoscelesTrapezoid,
    Neither,
}

/// Result of [`verify`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub k: usize,
    pub side_spread: f64,
    pub diag_spread: f64,
    pub convex: bool,
    pub quad_classes: Vec<QuadClass>,
    /// Both spreads below the tolerance.
    pub bicycle: bool,
    /// Dimension of equilateral `n`-gons up to similarity, `n − 3`.
    pub moduli_dimension: usize,
    /// Independent diagonal conditions: `n − 1`, or `n/2 − 1` when `k = n/2`.
    pub constraint_count: usize,
}

fn check_step(n: usize, k: usize) -> Result<()> {
    if k < 2 || 2 * k > n {
        return Err(Error::arg("k", format!("need 2 <= k <= n/2 = {}, got {k}", n / 2)));
    }
    Ok(())
}

/// Side and diagonal spreads, convexity, and the per-`i` quadrilateral class.
pub fn verify(p: &Polygon, k: usize, tol: f64) -> Result<VerifyReport> {
    let n = p.len();
    check_step(n, k)?;
    let (slo, shi) = min_max(&p.sides());
    let (dlo, dhi) = min_max(&p.diagonals(k));
    let quad_classes = (0..n).map(|i| classify(p, k, i, tol)).collect();
    let side_spread = shi - slo;
    let diag_spread = dhi - dlo;
    Ok(VerifyReport {
        n,
        k,
        side_spread,
        diag_spread,
        convex: p.is_convex(),
        quad_classes,
        bicycle: side_spread < tol && diag_spread < tol,
        moduli_dimension: n - 3,
        constraint_count: if 2 * k == n { n / 2 - 1 } else { n - 1 },
    })
}

fn classify(p: &Polygon, k: usize, i: usize, tol: f64) -> QuadClass {
    let (a, b, c, d) = (p.vertex(i), p.vertex(i + 1), p.vertex(i + k), p.vertex(i + k + 1));
    if ((b - a) - (d - c)).norm() < tol {
        return QuadClass::Parallelogram;
    }
    let legs = ((b - a).norm() - (d - c).norm()).abs();
    let diagonals = ((c - a).norm() - (d - b).norm()).abs();
    let base1 = c - b;
    let base2 = a - d;
    let parallel = base1.cross(base2).abs() / (base1.norm() * base2.norm()).max(f64::MIN_POSITIVE);
    if legs < tol && diagonals < tol && parallel < tol {
        QuadClass::IsoscelesTrapezoid
    } else {
        QuadClass::Neither
    }
}

/// Convexity range `(0, sin(π/m) tan(π/m))` of the apex altitude for a base
/// `m`-gon of circumradius 1, located by bisection of the convexity predicate.
pub fn flexible_range(n: usize) -> Result<(f64, f64)> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(Error::arg("n", format!("need an even n >= 6, got {n}")));
    }
    let m = n / 2;
    let convex = |h: f64| build_flexible(m, h).map(|p| p.is_convex()).unwrap_or(false);
    // at h* the apexes sit on the circumcircle, which is always convex
    let mut lo = 1.0 - (PI / m as f64).cos();
    let mut hi = 2.0;
    while convex(hi) {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if convex(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.0, lo))
}

/// Altitude at which every apex lies on the circumcircle of the base
/// `m`-gon, giving the regular `n`-gon.
pub fn regular_altitude(n: usize) -> f64 {
    1.0 - (PI / (n / 2) as f64).cos()
}

fn build_flexible(m: usize, h: f64) -> Result<Polygon> {
    let apothem = (PI / m as f64).cos();
    let mut v = Vec::with_capacity(2 * m);
    for j in 0..m {
        let t = 2.0 * PI * j as f64 / m as f64;
        v.push(Vec2::from_angle(t));
        v.push(Vec2::from_angle(t + PI / m as f64) * (apothem + h));
    }
    Polygon::new(v)
}

/// Regular `n/2`-gon of circumradius 1 with an outward isosceles triangle of
/// altitude `h` on every side. Equilateral for every `h`; for odd `k` all
/// `k`-diagonals are equal by the dihedral symmetry of the base.
///
/// Even `k` is accepted (the construction does not depend on `k`), but the
/// result is not a bicycle polygon for it unless `h` is the regular altitude.
pub fn flexible(n: usize, k: usize, h: f64) -> Result<Polygon> {
    check_step(n, k)?;
    let (lo, hi) = flexible_range(n)?;
    if !(h > lo && h < hi) {
        return Err(Error::AltitudeOutOfRange { h, lo, hi });
    }
    build_flexible(n / 2, h)
}

/// Plus-shaped 12-gon on the unit grid: unit sides, right angles, every
/// 2-diagonal `√2`, not convex.
pub fn grid_example() -> Polygon {
    let pts = [
        (0.0, -1.0),
        (1.0, -1.0),
        (1.0, 0.0),
        (2.0, 0.0),
        (2.0, 1.0),
        (1.0, 1.0),
        (1.0, 2.0),
        (0.0, 2.0),
        (0.0, 1.0),
        (-1.0, 1.0),
        (-1.0, 0.0),
        (0.0, 0.0),
    ];
    Polygon::new(pts.iter().map(|&(x, y)| Vec2::new(x, y)).collect()).expect("fixed polygon is valid")
}

/// Circle through the trapezoid `V_i V_{i+1} V_{i+k} V_{i+k+1}` and the two
/// arcs that replace its legs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub index: usize,
    pub center: Vec2,
    pub radius: f64,
    /// Polar angle of `V_i` about the center.
    pub start: f64,
    /// Signed central angle from `V_i` to `V_{i+1}`.
    pub sweep: f64,
    /// Polar angle of `V_{i+k}`.
    pub start_far: f64,
    /// Signed central angle from `V_{i+k}` to `V_{i+k+1}`.
    pub sweep_far: f64,
    /// Distance of `V_{i+k+1}` from the circle through the other three.
    pub concyclic_residual: f64,
}

impl ArcRecord {
    /// Lengths of the chord whose endpoints rotate along both arcs in step,
    /// from `V_iV_{i+k}` (`t = 0`) to `V_{i+1}V_{i+k+1}` (`t = 1`).
    pub fn chord_sweep(&self, samples: usize) -> Vec<f64> {
        (0..samples)
            .map(|s| {
                let t = if samples > 1 { s as f64 / (samples - 1) as f64 } else { 0.0 };
                let p = self.center + Vec2::from_angle(self.start + t * self.sweep) * self.radius;
                let q = self.center + Vec2::from_angle(self.start_far + t * self.sweep_far) * self.radius;
                p.dist(q)
            })
            .collect()
    }
}

fn circumcircle(a: Vec2, b: Vec2, c: Vec2) -> Option<(Vec2, f64)> {
    let (ab, ac) = (b - a, c - a);
    let d = 2.0 * ab.cross(ac);
    if d.abs() < 1e-300 {
        return None;
    }
    let center = a + (ab.perp() * ac.norm_sq() - ac.perp() * ab.norm_sq()) / d;
    Some((center, center.dist(a)))
}

/// Per-trapezoid circle and arc data for replacing the sides `V_iV_{i+1}` and
/// `V_{i+k}V_{i+k+1}` by circular arcs. Within each trapezoid a chord of fixed
/// length rotating on the circle keeps its length exactly.
pub fn petrunin_arcs(p: &Polygon, k: usize) -> Result<Vec<ArcRecord>> {
    let n = p.len();
    check_step(n, k)?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b, c, d) = (p.vertex(i), p.vertex(i + 1), p.vertex(i + k), p.vertex(i + k + 1));
        let (center, radius) =
            circumcircle(a, b, c).ok_or(Error::NotConcyclic { index: i, residual: f64::INFINITY })?;
        let residual = (d.dist(center) - radius).abs();
        if residual > CONCYCLIC_TOL {
            return Err(Error::NotConcyclic { index: i, residual });
        }
        let polar = |v: Vec2| (v - center).y.atan2((v - center).x);
        out.push(ArcRecord {
            index: i,
            center,
            radius,
            start: polar(a),
            sweep: (a - center).angle_to(b - center),
            start_far: polar(c),
            sweep_far: (c - center).angle_to(d - center),
            concyclic_residual: residual,
        });
    }
    Ok(out)
}

/// Centered copy with unit RMS distance from the centroid.
fn normalized(p: &Polygon) -> Vec<Vec2> {
    let c = p.centroid();
    let centered: Vec<Vec2> = p.vertices().iter().map(|&v| v - c).collect();
    let rms = (centered.iter().map(|v| v.norm_sq()).sum::<f64>() / centered.len() as f64).sqrt();
    centered.into_iter().map(|v| v / rms).collect()
}

/// Distance between two polygons up to similarity: both are centered and
/// scaled to unit RMS radius, then the RMS vertex distance is minimized over
/// rotations (closed-form Procrustes), cyclic relabelings and reflections.
/// `∞` when the vertex counts differ.
pub fn shape_distance(a: &Polygon, b: &Polygon) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let n = a.len();
    let pa = normalized(a);
    let pb = normalized(b);
    let mut best = f64::INFINITY;
    for reflect in [false, true] {
        let q: Vec<Vec2> = if reflect { pb.iter().map(|v| Vec2::new(v.x, -v.y)).collect() } else { pb.clone() };
        for reverse in [false, true] {
            for shift in 0..n {
                let at = |i: usize| {
                    let j = if reverse { (n - i) % n } else { i };
                    q[(j + shift) % n]
                };
                // maximize Σ p·R q: R at angle atan2(Σ q×p, Σ q·p)
                let (mut dot, mut cross) = (0.0, 0.0);
                for (i, &v) in pa.iter().enumerate() {
                    dot += at(i).dot(v);
                    cross += at(i).cross(v);
                }
                let angle = cross.atan2(dot);
                let sq: f64 = (0..n).map(|i| (pa[i] - at(i).rotate(angle)).norm_sq()).sum();
                best = best.min((sq / n as f64).max(0.0).sqrt());
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_examples() {
        let sq = regular(4, 1.0).unwrap();
        assert!(sq.sides().iter().all(|s| (s - 2f64.sqrt()).abs() < 1e-15));
        let hex = regular(6, 1.0).unwrap();
        assert!(hex.sides().iter().all(|s| (s - 1.0).abs() < 1e-15));
        assert!(hex.diagonals(2).iter().all(|d| (d - 3f64.sqrt()).abs() < 1e-15));
    }

    #[test]
    fn regular_polygons_verify() {
        for n in 4..=64 {
            let p = regular(n, 1.0).unwrap();
            for k in 2..=n / 2 {
                let r = verify(&p, k, VERIFY_TOL).unwrap();
                assert!(r.side_spread < 1e-12 && r.diag_spread < 1e-12, "n={n} k={k}");
                assert!(r.convex && r.bicycle);
                assert!(r.quad_classes.iter().all(|&c| c == QuadClass::IsoscelesTrapezoid));
            }
        }
    }

    #[test]
    fn step_bounds() {
        let p = regular(8, 1.0).unwrap();
        assert!(verify(&p, 1, VERIFY_TOL).is_err());
        assert!(verify(&p, 5, VERIFY_TOL).is_err());
    }

    #[test]
    fn flexible_range_matches_closed_form() {
        for n in [6, 8, 10, 14] {
            let m = (n / 2) as f64;
            let (lo, hi) = flexible_range(n).unwrap();
            assert_eq!(lo, 0.0);
            assert!((hi - (PI / m).sin() * (PI / m).tan()).abs() < 1e-12);
        }
    }

    #[test]
    fn flexible_family_is_bicycle() {
        let (_, hi) = flexible_range(8).unwrap();
        for j in 1..20 {
            let h = hi * j as f64 / 20.0;
            let p = flexible(8, 3, h).unwrap();
            let r = verify(&p, 3, VERIFY_TOL).unwrap();
            assert!(r.side_spread < 1e-12 && r.diag_spread < 1e-12);
            assert!(r.convex);
            assert!(r.quad_classes.iter().all(|&c| c == QuadClass::IsoscelesTrapezoid));
        }
    }

    #[test]
    fn flexible_at_regular_altitude_is_regular() {
        let p = flexible(6, 3, regular_altitude(6)).unwrap();
        assert!(shape_distance(&p, &regular(6, 1.0).unwrap()) < 1e-12);
        let q = flexible(6, 3, 0.1).unwrap();
        assert!(verify(&q, 3, VERIFY_TOL).unwrap().bicycle);
        assert!(shape_distance(&q, &regular(6, 1.0).unwrap()) > 1e-3);
    }

    #[test]
    fn even_step_fails() {
        let p = flexible(8, 2, 0.2).unwrap();
        let r = verify(&p, 2, VERIFY_TOL).unwrap();
        assert!(!r.bicycle && r.diag_spread > 1e-3);
    }

    #[test]
    fn altitude_out_of_range() {
        assert!(matches!(flexible(8, 3, 0.0), Err(Error::AltitudeOutOfRange { .. })));
        assert!(matches!(flexible(8, 3, 5.0), Err(Error::AltitudeOutOfRange { .. })));
    }

    #[test]
    fn grid_example_properties() {
        let p = grid_example();
        assert_eq!(p.len(), 12);
        assert!(p.sides().iter().all(|&s| s == 1.0));
        assert!(p.diagonals(2).iter().all(|&d| d == 2f64.sqrt()));
        let r = verify(&p, 2, VERIFY_TOL).unwrap();
        assert_eq!((r.side_spread, r.diag_spread, r.convex), (0.0, 0.0, false));
        assert!(r.quad_classes.iter().all(|&c| c != QuadClass::Neither));
    }

    #[test]
    fn petrunin_on_regular_is_one_circle() {
        let arcs = petrunin_arcs(&regular(8, 1.0).unwrap(), 3).unwrap();
        for a in &arcs {
            assert!(a.center.norm() < 1e-10);
            assert!((a.radius - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn petrunin_chords_constant_on_flexible() {
        let p = flexible(8, 3, 0.15).unwrap();
        let arcs = petrunin_arcs(&p, 3).unwrap();
        let centers: Vec<Vec2> = arcs.iter().map(|a| a.center).collect();
        assert!(centers.iter().any(|c| c.dist(centers[0]) > 1e-3));
        for a in &arcs {
            let sweep = a.chord_sweep(100);
            let (lo, hi) = min_max(&sweep);
            assert!(hi - lo < 1e-12);
            assert!((sweep[0] - p.vertex(a.index).dist(p.vertex(a.index + 3))).abs() < 1e-12);
        }
    }

    #[test]
    fn petrunin_rejects_generic_equilateral() {
        let dirs = [0.0, 0.9, 1.5, 2.6, 3.3, 4.1];
        let mut v = vec![Vec2::ZERO];
        for &t in &dirs {
            let last = *v.last().unwrap();
            v.push(last + Vec2::from_angle(t));
        }
        // close with two unit edges through the apex of an isosceles triangle
        let gap = v[0] - *v.last().unwrap();
        let mid = *v.last().unwrap() + gap * 0.5;
        let apex = mid + gap.perp().normalized() * (1.0 - gap.norm_sq() / 4.0).sqrt() * -1.0;
        v.push(apex);
        let p = Polygon::new(v).unwrap();
        assert!(p.sides().iter().all(|s| (s - 1.0).abs() < 1e-12));
        assert!(matches!(petrunin_arcs(&p, 3), Err(Error::NotConcyclic { .. })));
    }

    #[test]
    fn shape_distance_invariances() {
        let p = flexible(8, 3, 0.2).unwrap();
        let moved: Vec<Vec2> = p.vertices().iter().map(|&v| v.rotate(0.7) * 3.0 + Vec2::new(1.0, -2.0)).collect();
        let mut relabeled = moved.clone();
        relabeled.rotate_left(3);
        relabeled.reverse();
        let mirrored: Vec<Vec2> = relabeled.iter().map(|v| Vec2::new(-v.x, v.y)).collect();
        let q = Polygon::new(mirrored).unwrap();
        assert!(shape_distance(&p, &q) < 1e-12);
        let r = flexible(8, 3, 0.25).unwrap();
        assert!(shape_distance(&p, &r) > 1e-4);
    }

    #[test]
    fn json_round_trip() {
        let p = flexible(8, 3, 0.123).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with("{\"vertices\":[["));
        assert_eq!(serde_json::from_str::<Polygon>(&s).unwrap(), p);
        assert!(serde_json::from_str::<Polygon>("{\"vertices\":[[0,0],[1,0]]}").is_err());
    }
}
