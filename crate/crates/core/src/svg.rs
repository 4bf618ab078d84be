//! SVG figures: the domain, geodesics, Jordan triangles and cone
//! neighborhoods.
//!
//! The viewBox is the polygon bounding box grown by 5% on every side, with
//! the y axis flipped so that figures read with y pointing up.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::asymptotics::ConeNeighborhood;
use crate::cat0::{decompose_triangle, JordanTriangle};
use crate::domain::Domain;
use crate::error::{GeoError, Result};
use crate::geodesic::GeodesicPath;
use crate::geom::Point;

const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub basepoint: [f64; 2],
    pub target: [f64; 2],
    pub c: f64,
    pub epsilon: f64,
}

/// Scene description read by `jordan-geo svg`. Every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    #[serde(default)]
    pub geodesics: Vec<[[f64; 2]; 2]>,
    #[serde(default)]
    pub triangles: Vec<[[f64; 2]; 3]>,
    #[serde(default)]
    pub cones: Vec<ConeSpec>,
    #[serde(default)]
    pub points: Vec<[f64; 2]>,
}

impl SceneSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GeoError::InvalidParameter(format!("scene spec: {e}")))
    }
}

fn p(a: [f64; 2]) -> Point {
    Point::new(a[0], a[1])
}

pub struct SvgCanvas {
    lo: Point,
    hi: Point,
    unit: f64,
    body: String,
}

impl SvgCanvas {
    pub fn new(dom: &Domain) -> Self {
        let (lo, hi) = dom.polygon.bounding_box();
        let span = (hi.x - lo.x).max(hi.y - lo.y);
        let mx = MARGIN * (hi.x - lo.x).max(1e-12 * span);
        let my = MARGIN * (hi.y - lo.y).max(1e-12 * span);
        let mut c = SvgCanvas {
            lo: Point::new(lo.x - mx, lo.y - my),
            hi: Point::new(hi.x + mx, hi.y + my),
            unit: span / 400.0,
            body: String::new(),
        };
        c.polygon(dom.polygon.vertices(), "domain", "#f4f1e8", "#222", 1.5);
        c
    }

    fn xy(&self, q: Point) -> (f64, f64) {
        (q.x, self.lo.y + self.hi.y - q.y)
    }

    fn coords(&self, pts: &[Point]) -> String {
        let mut s = String::new();
        for (i, &q) in pts.iter().enumerate() {
            let (x, y) = self.xy(q);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x:.6},{y:.6}");
        }
        s
    }

    fn polygon(&mut self, pts: &[Point], class: &str, fill: &str, stroke: &str, width: f64) {
        let coords = self.coords(pts);
        let _ = writeln!(
            self.body,
            r#"  <polygon class="{class}" points="{coords}" fill="{fill}" stroke="{stroke}" stroke-width="{:.6}" stroke-linejoin="round"/>"#,
            width * self.unit
        );
    }

    pub fn polyline(&mut self, pts: &[Point], class: &str, stroke: &str, width: f64) {
        let coords = self.coords(pts);
        let _ = writeln!(
            self.body,
            r#"  <polyline class="{class}" points="{coords}" fill="none" stroke="{stroke}" stroke-width="{:.6}" stroke-linejoin="round" stroke-linecap="round"/>"#,
            width * self.unit
        );
    }

    pub fn dot(&mut self, q: Point, class: &str, fill: &str, radius: f64) {
        let (x, y) = self.xy(q);
        let _ = writeln!(self.body, r#"  <circle class="{class}" cx="{x:.6}" cy="{y:.6}" r="{:.6}" fill="{fill}"/>"#, radius * self.unit);
    }

    pub fn ring(&mut self, q: Point, r: f64, class: &str, stroke: &str) {
        let (x, y) = self.xy(q);
        let _ = writeln!(
            self.body,
            r#"  <circle class="{class}" cx="{x:.6}" cy="{y:.6}" r="{r:.6}" fill="{stroke}" fill-opacity="0.15" stroke="{stroke}" stroke-width="{:.6}"/>"#,
            self.unit
        );
    }

    pub fn geodesic(&mut self, g: &GeodesicPath) {
        self.polyline(g.points(), "geodesic", "#1f5fa8", 2.0);
        self.dot(g.source(), "endpoint", "#1f5fa8", 3.0);
        self.dot(g.target(), "endpoint", "#1f5fa8", 3.0);
    }

    pub fn triangle(&mut self, t: &JordanTriangle) {
        if !t.degenerate {
            let core = t.core_loop();
            self.polygon(&core, "core", "#f2c14e", "none", 0.0);
        }
        for tail in &t.tails {
            if !tail.is_degenerate() {
                self.polyline(tail.points(), "tail", "#777", 2.0);
            }
        }
        for side in &t.core {
            if !side.is_degenerate() {
                self.polyline(side.points(), "core-side", "#b3362c", 2.0);
            }
        }
        for &v in &t.vertices {
            self.dot(v, "vertex", "#222", 3.0);
        }
        for &b in &t.bifurcation {
            self.dot(b, "bifurcation", "#b3362c", 4.0);
        }
    }

    pub fn cone(&mut self, n: &ConeNeighborhood) {
        self.polyline(n.ray.points(), "ray", "#2b8a3e", 2.0);
        self.ring(n.center(), n.epsilon, "cone-ball", "#2b8a3e");
        self.dot(n.basepoint, "basepoint", "#2b8a3e", 3.0);
        self.dot(n.target(), "target", "#2b8a3e", 3.0);
    }

    pub fn finish(self) -> String {
        let (w, h) = (self.hi.x - self.lo.x, self.hi.y - self.lo.y);
        let (pw, ph) = if w >= h { (800.0, 800.0 * h / w) } else { (800.0 * w / h, 800.0) };
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {w:.6} {h:.6}\" width=\"{pw:.0}\" height=\"{ph:.0}\">\n{}</svg>\n",
            self.lo.x, self.lo.y, self.body
        )
    }
}

pub fn render_scene(dom: &Domain, scene: &SceneSpec) -> Result<String> {
    let mut canvas = SvgCanvas::new(dom);
    for t in &scene.triangles {
        canvas.triangle(&decompose_triangle(dom, p(t[0]), p(t[1]), p(t[2]))?);
    }
    for g in &scene.geodesics {
        canvas.geodesic(&dom.geodesic(p(g[0]), p(g[1]))?);
    }
    for c in &scene.cones {
        let n = ConeNeighborhood::toward(dom, p(c.basepoint), p(c.target), c.c, c.epsilon)?;
        canvas.cone(&n);
    }
    for &q in &scene.points {
        let q = p(q);
        if !dom.polygon.contains_closed(q) {
            return Err(GeoError::PointOutsideDomain { x: q.x, y: q.y });
        }
        canvas.dot(q, "point", "#222", 3.0);
    }
    Ok(canvas.finish())
}
