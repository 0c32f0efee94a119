//! Static SVG figures on a fixed 1000×1000 view box.

use std::fmt::Write;

use crate::curves::{resample_arclength, vertices, ClosedCurve, WaveFront};
use crate::error::Result;
use crate::geom::Vec2;
use crate::polygons::Polygon;

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 50.0;

/// Marker kinds drawn on top of the strokes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Cusp,
    Vertex,
}

struct Stroke {
    points: Vec<Vec2>,
    closed: bool,
    color: &'static str,
    width: f64,
}

/// A collection of polylines and markers in world coordinates.
#[derive(Default)]
pub struct Figure {
    strokes: Vec<Stroke>,
    marks: Vec<(Vec2, Mark)>,
}

impl Figure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn polyline(&mut self, points: Vec<Vec2>, closed: bool, color: &'static str) -> &mut Self {
        self.strokes.push(Stroke { points, closed, color, width: 2.0 });
        self
    }

    /// Thin segment, used for chords and diagonals.
    pub fn segment(&mut self, a: Vec2, b: Vec2, color: &'static str) -> &mut Self {
        self.strokes.push(Stroke { points: vec![a, b], closed: false, color, width: 0.75 });
        self
    }

    pub fn mark(&mut self, at: Vec2, kind: Mark) -> &mut Self {
        self.marks.push((at, kind));
        self
    }

    /// Render, fitting the bounding box of everything drawn into the view box
    /// with the y axis pointing up.
    pub fn to_svg(&self) -> String {
        let all = self.strokes.iter().flat_map(|s| s.points.iter()).chain(self.marks.iter().map(|m| &m.0));
        let (mut lo, mut hi) =
            (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in all {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if !lo.is_finite() {
            lo = Vec2::new(-1.0, -1.0);
            hi = Vec2::new(1.0, 1.0);
        }
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
        let scale = (SIZE - 2.0 * MARGIN) / extent;
        let mid = (lo + hi) * 0.5;
        let map = |p: Vec2| (0.5 * SIZE + (p.x - mid.x) * scale, 0.5 * SIZE - (p.y - mid.y) * scale);

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for s in &self.strokes {
            let pts: Vec<String> = s
                .points
                .iter()
                .map(|&p| {
                    let (x, y) = map(p);
                    format!("{x:.4},{y:.4}")
                })
                .collect();
            let tag = if s.closed { "polygon" } else { "polyline" };
            let _ = writeln!(
                out,
                r#"<{tag} points="{}" fill="none" stroke="{}" stroke-width="{}" stroke-linejoin="round"/>"#,
                pts.join(" "),
                s.color,
                s.width
            );
        }
        for &(p, kind) in &self.marks {
            let (x, y) = map(p);
            let _ = match kind {
                Mark::Cusp => writeln!(out, r#"<circle cx="{x:.4}" cy="{y:.4}" r="6" fill="crimson"/>"#),
                Mark::Vertex => writeln!(
                    out,
                    r#"<rect x="{:.4}" y="{:.4}" width="10" height="10" fill="none" stroke="darkgreen" stroke-width="2"/>"#,
                    x - 5.0,
                    y - 5.0
                ),
            };
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Points of `curve` at the parameters `params` (trigonometric interpolation).
fn points_at(curve: &ClosedCurve, params: &[f64]) -> Vec<Vec2> {
    let (sx, sy) = curve.coordinate_series();
    params.iter().map(|&t| Vec2::new(sx.eval(t), sy.eval(t))).collect()
}

/// Add a closed curve, optionally marking its vertices.
pub fn add_curve(fig: &mut Figure, curve: &ClosedCurve, color: &'static str, mark_vertices: bool) -> Result<()> {
    fig.polyline(curve.dense_samples(4), true, color);
    if mark_vertices {
        let by_arc = if curve.is_arclength() { curve.clone() } else { resample_arclength(curve, curve.len(), false)? };
        let v = vertices(&by_arc)?;
        if !v.circle {
            for p in points_at(&by_arc, &v.params) {
                fig.mark(p, Mark::Vertex);
            }
        }
    }
    Ok(())
}

/// Add a wave front, scaled about the origin by `scale`, traced over one half
/// turn of its tangent; optionally mark its cusps.
pub fn add_front(
    fig: &mut Figure,
    front: &WaveFront,
    scale: f64,
    samples: usize,
    color: &'static str,
    mark_cusps: bool,
) {
    let pts = (0..samples).map(|j| front.position(std::f64::consts::PI * j as f64 / samples as f64) * scale).collect();
    fig.polyline(pts, true, color);
    if mark_cusps {
        for t in front.cusps() {
            fig.mark(front.position(t) * scale, Mark::Cusp);
        }
    }
}

/// Add a polygon, optionally with its `k`-diagonals.
pub fn add_polygon(fig: &mut Figure, p: &Polygon, diagonals: Option<usize>, color: &'static str) {
    if let Some(k) = diagonals {
        for i in 0..p.len() {
            fig.segment(p.vertex(i), p.vertex(i + k), "steelblue");
        }
    }
    fig.polyline(p.vertices().to_vec(), true, color);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygons::regular;

    #[test]
    fn fits_view_box() {
        let mut fig = Figure::new();
        add_polygon(&mut fig, &regular(8, 3.0).unwrap(), Some(3), "black");
        let svg = fig.to_svg();
        assert!(svg.contains(r#"viewBox="0 0 1000 1000""#));
        let coords: Vec<f64> = svg.split(['"', ' ', ',']).filter_map(|t| t.parse::<f64>().ok()).collect();
        assert!(coords.iter().all(|&c| (0.0..=1000.0).contains(&c)));
        assert_eq!(svg.matches("<polyline").count(), 8);
    }

    #[test]
    fn cusps_and_vertices_marked() {
        let mut fig = Figure::new();
        add_front(&mut fig, &WaveFront::cosine(3, 1.0).unwrap(), 1.0, 256, "black", true);
        assert_eq!(fig.to_svg().matches("<circle").count(), 3);

        let ellipse = ClosedCurve::from_fn(256, false, |t| Vec2::new(2.0 * t.cos(), t.sin())).unwrap();
        let mut fig = Figure::new();
        add_curve(&mut fig, &ellipse, "black", true).unwrap();
        assert_eq!(fig.to_svg().matches(r#"stroke="darkgreen""#).count(), 4);
    }

    #[test]
    fn deterministic() {
        let mut a = Figure::new();
        add_front(&mut a, &WaveFront::cosine(5, 0.7).unwrap(), 1.0, 300, "black", true);
        let mut b = Figure::new();
        add_front(&mut b, &WaveFront::cosine(5, 0.7).unwrap(), 1.0, 300, "black", true);
        assert_eq!(a.to_svg(), b.to_svg());
    }
}
