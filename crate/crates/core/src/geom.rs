//! Planar primitives and tolerance-filtered predicates.
//!
//! The plane is oriented counter-clockwise throughout: a positive
//! orientation or turning angle means a left turn.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::GeoError;

/// Relative snap bound for [`orient`]: determinants with magnitude below
/// `ORIENT_EPS * m^2` (with `m` the largest coordinate magnitude involved)
/// are reported as collinear.
pub const ORIENT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(v: [f64; 2]) -> Self {
        Point::new(v[0], v[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    pub fn midpoint(self, o: Point) -> Point {
        self.lerp(o, 0.5)
    }

    /// Counter-clockwise rotation by `angle` radians.
    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    /// Lexicographic comparison on (x, y); used for deterministic tie-breaks.
    pub fn lex_cmp(&self, o: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    /// Parameter of the orthogonal projection of `p`, clamped to `[0, 1]`.
    pub fn project_param(&self, p: Point) -> f64 {
        let d = self.b - self.a;
        let len2 = d.dot(d);
        if len2 == 0.0 {
            return 0.0;
        }
        ((p - self.a).dot(d) / len2).clamp(0.0, 1.0)
    }

    pub fn closest_point(&self, p: Point) -> Point {
        self.a.lerp(self.b, self.project_param(p))
    }

    pub fn dist_to_point(&self, p: Point) -> f64 {
        self.closest_point(p).dist(p)
    }
}

/// Raw doubled signed area of triangle `abc`.
#[inline]
pub fn orient_det(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// Sign of the signed area of `abc`: `+1` for a counter-clockwise turn,
/// `-1` for clockwise, `0` when the determinant is within the snap bound.
pub fn orient(a: Point, b: Point, c: Point) -> i32 {
    let det = orient_det(a, b, c);
    let m = a.max_abs().max(b.max_abs()).max(c.max_abs());
    let bound = ORIENT_EPS * m * m;
    if det > bound {
        1
    } else if det < -bound {
        -1
    } else {
        0
    }
}

/// True iff the open interiors of the two segments cross at a single point.
/// Touching at an endpoint or collinear overlap does not count.
pub fn segments_properly_intersect(s1: Segment, s2: Segment) -> bool {
    let o1 = orient(s1.a, s1.b, s2.a);
    let o2 = orient(s1.a, s1.b, s2.b);
    let o3 = orient(s2.a, s2.b, s1.a);
    let o4 = orient(s2.a, s2.b, s1.b);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// `c` is collinear with `ab` and inside its bounding box.
pub fn on_segment(s: Segment, c: Point) -> bool {
    orient(s.a, s.b, c) == 0
        && c.x >= s.a.x.min(s.b.x)
        && c.x <= s.a.x.max(s.b.x)
        && c.y >= s.a.y.min(s.b.y)
        && c.y <= s.a.y.max(s.b.y)
}

/// Closed intersection test: any shared point, including endpoints and
/// collinear overlaps.
pub fn segments_intersect(s1: Segment, s2: Segment) -> bool {
    let o1 = orient(s1.a, s1.b, s2.a);
    let o2 = orient(s1.a, s1.b, s2.b);
    let o3 = orient(s2.a, s2.b, s1.a);
    let o4 = orient(s2.a, s2.b, s1.b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(s1, s2.a))
        || (o2 == 0 && on_segment(s1, s2.b))
        || (o3 == 0 && on_segment(s2, s1.a))
        || (o4 == 0 && on_segment(s2, s1.b))
}

/// Signed exterior angle from `incoming` to `outgoing`, in `(-pi, pi]`.
pub fn turning_angle(incoming: Point, outgoing: Point) -> Result<f64, GeoError> {
    if incoming.norm() == 0.0 || outgoing.norm() == 0.0 || !incoming.is_finite() || !outgoing.is_finite() {
        return Err(GeoError::ZeroDirection);
    }
    let a = incoming.cross(outgoing).atan2(incoming.dot(outgoing));
    Ok(if a <= -PI { PI } else { a })
}

/// Counter-clockwise angle from direction `from` to direction `to`, in `[0, 2pi)`.
pub fn ccw_angle(from: Point, to: Point) -> f64 {
    let a = from.cross(to).atan2(from.dot(to));
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Shoelace signed area of a closed loop (positive for CCW).
pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * s
}
