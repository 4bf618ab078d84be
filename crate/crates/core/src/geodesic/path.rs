use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::geom::{Point, Segment};

/// Polyline with an arclength parametrization starting at 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPath {
    points: Vec<Point>,
    cumulative: Vec<f64>,
}

impl GeodesicPath {
    /// Builds a path, dropping consecutive duplicate points.
    ///
    /// Panics on an empty point list.
    pub fn new(points: Vec<Point>) -> Self {
        assert!(!points.is_empty(), "a path needs at least one point");
        let mut pts: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        let mut cumulative = Vec::with_capacity(pts.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for w in pts.windows(2) {
            acc += w[0].dist(w[1]);
            cumulative.push(acc);
        }
        GeodesicPath { points: pts, cumulative }
    }

    pub fn point(p: Point) -> Self {
        GeodesicPath::new(vec![p])
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn cumulative_arclength(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn total_length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    pub fn source(&self) -> Point {
        self.points[0]
    }

    pub fn target(&self) -> Point {
        *self.points.last().unwrap()
    }

    pub fn is_degenerate(&self) -> bool {
        self.points.len() == 1
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.points.windows(2).map(|w| Segment::new(w[0], w[1]))
    }

    /// The point at arclength `s` from the source.
    pub fn point_at_arclength(&self, s: f64) -> Result<Point> {
        let total = self.total_length();
        let slack = 1e-12 * total.max(1.0);
        if !(s >= -slack && s <= total + slack) {
            return Err(GeoError::ArclengthOutOfRange { s, total });
        }
        Ok(self.at(s))
    }

    /// Like [`point_at_arclength`](Self::point_at_arclength) with `s` clamped.
    pub fn at(&self, s: f64) -> Point {
        let s = s.clamp(0.0, self.total_length());
        if self.points.len() == 1 {
            return self.points[0];
        }
        let k = self.cumulative.partition_point(|&c| c <= s).clamp(1, self.points.len() - 1);
        let (c0, c1) = (self.cumulative[k - 1], self.cumulative[k]);
        if s == c1 {
            return self.points[k];
        }
        let t = if c1 > c0 { (s - c0) / (c1 - c0) } else { 0.0 };
        self.points[k - 1].lerp(self.points[k], t)
    }

    pub fn reversed(&self) -> GeodesicPath {
        let mut pts = self.points.clone();
        pts.reverse();
        GeodesicPath::new(pts)
    }

    /// Sub-path over the arclength window `[s0, s1]` (clamped, `s0 <= s1`).
    pub fn subpath(&self, s0: f64, s1: f64) -> GeodesicPath {
        let total = self.total_length();
        let (s0, s1) = (s0.clamp(0.0, total), s1.clamp(0.0, total));
        let mut pts = vec![self.at(s0)];
        for (i, &c) in self.cumulative.iter().enumerate() {
            if c > s0 && c < s1 {
                pts.push(self.points[i]);
            }
        }
        if s1 > s0 {
            pts.push(self.at(s1));
        }
        GeodesicPath::new(pts)
    }

    /// Concatenation; the junction point is shared, not duplicated.
    pub fn concat(&self, other: &GeodesicPath) -> GeodesicPath {
        let mut pts = self.points.clone();
        pts.extend_from_slice(&other.points);
        GeodesicPath::new(pts)
    }

    /// `n >= 2` points at uniform arclength spacing, endpoints included.
    pub fn sample(&self, n: usize) -> Vec<(f64, Point)> {
        let total = self.total_length();
        let n = n.max(2);
        (0..n)
            .map(|k| {
                let s = total * k as f64 / (n - 1) as f64;
                (s, self.at(s))
            })
            .collect()
    }

    /// Euclidean distance from `x` to the polyline.
    pub fn distance_to_point(&self, x: Point) -> f64 {
        if self.points.len() == 1 {
            return self.points[0].dist(x);
        }
        self.segments().map(|s| s.dist_to_point(x)).fold(f64::INFINITY, f64::min)
    }
}
