//! Simple-polygon domain model.
//!
//! A [`SimplePolygon`] is the closed region bounded by a counter-clockwise
//! vertex loop. It is only constructed through [`validate`], so every value
//! in circulation is simple, CCW, and carries its Euclidean diameter.

mod generate;
mod triangulation;

pub use generate::{generate, koch_deep_vertex_index, PolygonKind};
pub use triangulation::{triangulate, Triangulation};

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::geom::{on_segment, orient, segments_intersect, segments_properly_intersect, signed_area, Point, Segment};

/// Boundary-membership tolerance relative to the polygon diameter.
pub const BOUNDARY_EPS_REL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Retain collinear run midpoints instead of stripping them.
    pub keep_collinear: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
    diameter: f64,
    reflex: Vec<bool>,
    keep_collinear: bool,
}

/// Where a query point sits relative to the closed polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    Inside,
    /// Within the boundary tolerance of edge `edge` at parameter `t`.
    OnBoundary { edge: usize, t: f64 },
    Outside,
}

/// Polygon interchange file: `{"vertices": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<[f64; 2]>,
}

impl PolygonFile {
    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn points(&self) -> Vec<Point> {
        self.vertices.iter().map(|&v| Point::from(v)).collect()
    }
}

impl From<&SimplePolygon> for PolygonFile {
    fn from(p: &SimplePolygon) -> Self {
        PolygonFile { vertices: p.vertices.iter().map(|&v| v.into()).collect() }
    }
}

pub fn validate(raw: &[Point]) -> Result<SimplePolygon> {
    validate_with(raw, ValidateOptions::default())
}

pub fn validate_with(raw: &[Point], opts: ValidateOptions) -> Result<SimplePolygon> {
    if raw.iter().any(|p| !p.is_finite()) {
        return Err(GeoError::DegenerateInput("non-finite coordinate".into()));
    }
    let mut v: Vec<Point> = Vec::with_capacity(raw.len());
    for &p in raw {
        if v.last() != Some(&p) {
            v.push(p);
        }
    }
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    if !opts.keep_collinear {
        strip_collinear(&mut v);
    }
    if v.len() < 3 {
        return Err(GeoError::DegenerateInput(format!("{} distinct vertices after normalization", v.len())));
    }
    check_simple(&v)?;
    let area = signed_area(&v);
    if area == 0.0 {
        return Err(GeoError::DegenerateInput("zero signed area".into()));
    }
    if area < 0.0 {
        // keep vertex 0 in place so generator indices survive
        v[1..].reverse();
    }
    let diameter = diameter_brute_force(&v);
    let n = v.len();
    let reflex = (0..n).map(|i| orient(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) < 0).collect();
    Ok(SimplePolygon { vertices: v, diameter, reflex, keep_collinear: opts.keep_collinear })
}

fn strip_collinear(v: &mut Vec<Point>) {
    loop {
        let n = v.len();
        if n < 3 {
            return;
        }
        let hit = (0..n).find(|&i| {
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            orient(a, b, c) == 0 && (a - b).dot(c - b) < 0.0
        });
        match hit {
            Some(i) => {
                v.remove(i);
            }
            None => return,
        }
    }
}

fn check_simple(v: &[Point]) -> Result<()> {
    let n = v.len();
    let edge = |i: usize| Segment::new(v[i], v[(i + 1) % n]);
    for i in 0..n {
        // adjacent pair (i, i+1): must share only the common vertex
        let j = (i + 1) % n;
        let (a, s, c) = (v[i], v[j], v[(j + 1) % n]);
        let folded = orient(a, s, c) == 0 && (a - s).dot(c - s) > 0.0;
        if folded {
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            return Err(GeoError::SimplicityViolation { edge_a: lo, edge_b: hi });
        }
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_intersect(edge(i), edge(j)) {
                return Err(GeoError::SimplicityViolation { edge_a: i, edge_b: j });
            }
        }
    }
    Ok(())
}

pub fn diameter_brute_force(v: &[Point]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            best = best.max(v[i].dist(v[j]));
        }
    }
    best
}

/// Andrew's monotone chain; returns the hull CCW without collinear points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Diameter via rotating calipers over the convex hull.
pub fn diameter_rotating_calipers(points: &[Point]) -> f64 {
    let h = convex_hull(points);
    let m = h.len();
    match m {
        0 | 1 => return 0.0,
        2 => return h[0].dist(h[1]),
        _ => {}
    }
    let area2 = |a: Point, b: Point, c: Point| (b - a).cross(c - a).abs();
    let mut best = 0.0f64;
    let mut j = 1;
    for i in 0..m {
        let (a, b) = (h[i], h[(i + 1) % m]);
        while area2(a, b, h[(j + 1) % m]) > area2(a, b, h[j]) {
            j = (j + 1) % m;
        }
        best = best.max(a.dist(h[j])).max(b.dist(h[j]));
        // antipodal ties on parallel edges
        best = best.max(a.dist(h[(j + 1) % m])).max(b.dist(h[(j + 1) % m]));
    }
    best
}

impl SimplePolygon {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn keeps_collinear(&self) -> bool {
        self.keep_collinear
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    pub fn edge(&self, i: usize) -> Segment {
        let n = self.vertices.len();
        Segment::new(self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        self.reflex[i % self.vertices.len()]
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Absolute boundary tolerance `BOUNDARY_EPS_REL * D`.
    pub fn boundary_eps(&self) -> f64 {
        BOUNDARY_EPS_REL * self.diameter
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    /// Index of the vertex at exactly (or within `tol` of) `p`.
    pub fn vertex_index_near(&self, p: Point, tol: f64) -> Option<usize> {
        self.vertices.iter().position(|v| v.dist(p) <= tol)
    }

    /// Nearest boundary edge: `(distance, edge index, parameter)`.
    pub fn nearest_edge(&self, p: Point) -> (f64, usize, f64) {
        let mut best = (f64::INFINITY, 0, 0.0);
        for (i, e) in self.edges().enumerate() {
            let t = e.project_param(p);
            let d = e.a.lerp(e.b, t).dist(p);
            if d < best.0 {
                best = (d, i, t);
            }
        }
        best
    }

    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.nearest_edge(p).0
    }

    /// Crossing-number test; meaningful only off the boundary.
    pub fn crossing_inside(&self, p: Point) -> bool {
        crossing_inside(&self.vertices, p)
    }

    pub fn locate(&self, p: Point) -> Location {
        let (d, edge, t) = self.nearest_edge(p);
        if d <= self.boundary_eps() {
            Location::OnBoundary { edge, t }
        } else if self.crossing_inside(p) {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    pub fn contains_closed(&self, p: Point) -> bool {
        !matches!(self.locate(p), Location::Outside)
    }

    pub fn contains_open(&self, p: Point) -> bool {
        matches!(self.locate(p), Location::Inside)
    }

    /// Returns `p` if it is in the closed domain, its projection onto the
    /// boundary if it is outside but within tolerance, and an error otherwise.
    pub fn snap(&self, p: Point) -> Result<Point> {
        if !p.is_finite() {
            return Err(GeoError::PointOutsideDomain { x: p.x, y: p.y });
        }
        let (d, edge, t) = self.nearest_edge(p);
        if self.crossing_inside(p) {
            return Ok(p);
        }
        if d <= self.boundary_eps() {
            let e = self.edge(edge);
            return Ok(if d == 0.0 { p } else { e.a.lerp(e.b, t) });
        }
        Err(GeoError::PointOutsideDomain { x: p.x, y: p.y })
    }

    /// Position along the CCW boundary as `edge + t`, if `p` is on the boundary.
    pub fn boundary_position(&self, p: Point) -> Option<f64> {
        let tol = self.boundary_eps();
        if let Some(i) = self.vertex_index_near(p, tol) {
            return Some(i as f64);
        }
        let (d, edge, t) = self.nearest_edge(p);
        (d <= tol).then_some(edge as f64 + t)
    }

    /// The open segment `ab` lies in the closed polygon.
    pub fn segment_inside_closed(&self, a: Point, b: Point) -> bool {
        segment_in_closed_loop(&self.vertices, a, b, self.boundary_eps())
    }

    /// True iff both endpoints lie on the boundary and the open segment lies
    /// in the open interior.
    pub fn is_chord(&self, s: Segment) -> bool {
        let tol = self.boundary_eps();
        if s.a.dist(s.b) <= tol {
            return false;
        }
        if self.boundary_distance(s.a) > tol || self.boundary_distance(s.b) > tol {
            return false;
        }
        for v in &self.vertices {
            if v.dist(s.a) <= tol || v.dist(s.b) <= tol {
                continue;
            }
            if s.dist_to_point(*v) <= tol {
                return false;
            }
        }
        if self.edges().any(|e| segments_properly_intersect(e, s)) {
            return false;
        }
        self.contains_open(s.a.midpoint(s.b))
    }

    /// First boundary hit of the ray `origin + t*dir`, `t > 0`, ignoring the
    /// edges incident to vertex `skip`. Returns `(point, t)`.
    pub fn ray_hit(&self, origin: Point, dir: Point, skip: Option<usize>) -> Option<(Point, f64)> {
        let n = self.len();
        let tmin = 1e-12 * self.diameter / dir.norm().max(f64::MIN_POSITIVE);
        let mut best: Option<(Point, f64)> = None;
        for i in 0..n {
            if let Some(k) = skip {
                if i == k || (i + 1) % n == k {
                    continue;
                }
            }
            let e = self.edge(i);
            let ed = e.b - e.a;
            let denom = dir.cross(ed);
            if denom == 0.0 {
                continue;
            }
            let w = e.a - origin;
            let t = w.cross(ed) / denom;
            let u = w.cross(dir) / denom;
            if t > tmin && (-1e-12..=1.0 + 1e-12).contains(&u) && best.is_none_or(|(_, bt)| t < bt) {
                best = Some((origin + dir * t, t));
            }
        }
        best
    }
}

/// Crossing-number point-in-polygon test over an arbitrary closed loop.
pub fn crossing_inside(loop_pts: &[Point], p: Point) -> bool {
    let n = loop_pts.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (loop_pts[i], loop_pts[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn loop_boundary_distance(loop_pts: &[Point], p: Point) -> f64 {
    let n = loop_pts.len();
    (0..n)
        .map(|i| Segment::new(loop_pts[i], loop_pts[(i + 1) % n]).dist_to_point(p))
        .fold(f64::INFINITY, f64::min)
}

/// The open segment `ab` lies in the closed region bounded by `loop_pts`.
///
/// The segment is cut at every loop vertex it passes through; with no proper
/// crossings each piece is entirely inside or entirely outside, so one
/// midpoint test per piece decides it.
pub fn segment_in_closed_loop(loop_pts: &[Point], a: Point, b: Point, eps: f64) -> bool {
    let n = loop_pts.len();
    let s = Segment::new(a, b);
    if a == b {
        return crossing_inside(loop_pts, a) || loop_boundary_distance(loop_pts, a) <= eps;
    }
    for i in 0..n {
        let e = Segment::new(loop_pts[i], loop_pts[(i + 1) % n]);
        if segments_properly_intersect(e, s) {
            return false;
        }
    }
    let mut cuts = vec![0.0, 1.0];
    for &v in loop_pts {
        if on_segment(s, v) || s.dist_to_point(v) <= eps {
            let t = s.project_param(v);
            if t > 0.0 && t < 1.0 {
                cuts.push(t);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.windows(2).all(|w| {
        if w[1] - w[0] <= 1e-15 {
            return true;
        }
        let m = a.lerp(b, 0.5 * (w[0] + w[1]));
        loop_boundary_distance(loop_pts, m) <= eps || crossing_inside(loop_pts, m)
    })
}
