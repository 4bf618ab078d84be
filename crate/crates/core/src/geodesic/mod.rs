//! Intrinsic shortest paths in a simple polygon.
//!
//! Point-to-point queries walk the triangulation sleeve between the two
//! containing triangles and pull a taut string through the portal sequence
//! (the funnel algorithm). The result is put in a canonical form so that
//! independently computed paths can be compared vertex by vertex.

mod path;
mod separation;

pub use path::GeodesicPath;
pub use separation::{
    check_separation, find_separating_chord, sample_chords, side_of_chord, Chord, ChordSide, SeparationReport,
    SeparationViolation, DEFAULT_CHORD_CAP,
};

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::geom::{ccw_angle, orient, turning_angle, Point};
use crate::polygon::{SimplePolygon, Triangulation};

/// Turning angles below this magnitude (radians) count as straight.
pub const ZERO_TURN: f64 = 1e-10;

/// Angular slack for the reflex-wedge test in [`validate_taut`].
const WEDGE_TOL: f64 = 1e-9;

pub fn shortest_path(poly: &SimplePolygon, tri: &Triangulation, p: Point, q: Point) -> Result<GeodesicPath> {
    let p = poly.snap(p)?;
    let q = poly.snap(q)?;
    if p == q {
        return Ok(GeodesicPath::point(p));
    }
    let tol = poly.boundary_eps();
    // a point on a diagonal belongs to both triangles; the minimal sleeve
    // keeps it off its own portals
    let tight = 1e-12 * poly.diameter();
    let locate = |x: Point| {
        let ts = tri.locate_all(poly, x, tight, tol);
        if ts.is_empty() {
            Err(GeoError::PointOutsideDomain { x: x.x, y: x.y })
        } else {
            Ok(ts)
        }
    };
    let (tp, tq) = (locate(p)?, locate(q)?);
    let sleeve = tri.sleeve_between(&tp, &tq);
    if sleeve.is_empty() {
        return Err(GeoError::Internal("triangulation dual graph is disconnected".into()));
    }
    let mut portals = Vec::with_capacity(sleeve.len() + 1);
    portals.push((p, p));
    for w in sleeve.windows(2) {
        let (r, l) = tri.portal(w[0], w[1]).ok_or_else(|| GeoError::Internal("sleeve triangles not adjacent".into()))?;
        portals.push((poly.vertex(l), poly.vertex(r)));
    }
    portals.push((q, q));
    let raw = string_pull(&portals);
    Ok(canonicalize(poly, raw))
}

/// Taut string through `(left, right)` portals; the first and last portals
/// are the degenerate source and target.
fn string_pull(portals: &[(Point, Point)]) -> Vec<Point> {
    let start = portals[0].0;
    let goal = portals[portals.len() - 1].0;
    let mut path = vec![start];
    let (mut apex, mut left, mut right) = (start, start, start);
    let (mut left_idx, mut right_idx) = (0usize, 0usize);
    let mut i = 1;
    while i < portals.len() {
        let (pl, pr) = portals[i];

        // tighten the right boundary
        if orient(apex, right, pr) >= 0 {
            if apex == right || orient(apex, left, pr) < 0 {
                right = pr;
                right_idx = i;
            } else {
                // right crossed over left: left becomes the new apex
                path.push(left);
                apex = left;
                right = apex;
                right_idx = left_idx;
                i = left_idx + 1;
                continue;
            }
        }

        // tighten the left boundary
        if orient(apex, left, pl) <= 0 {
            if apex == left || orient(apex, right, pl) > 0 {
                left = pl;
                left_idx = i;
            } else {
                path.push(right);
                apex = right;
                left = apex;
                left_idx = right_idx;
                i = right_idx + 1;
                continue;
            }
        }
        i += 1;
    }
    path.push(goal);
    path
}

/// Canonical vertex list: straight-through vertices removed, then every
/// reflex polygon vertex the path touches inserted. Two computations of the
/// same geodesic agree on this form even when their raw outputs differ by
/// length ties.
pub fn canonicalize(poly: &SimplePolygon, raw: Vec<Point>) -> GeodesicPath {
    let tiny = 1e-12 * poly.diameter();
    let mut pts: Vec<Point> = Vec::with_capacity(raw.len());
    for p in raw {
        if pts.last().is_none_or(|l: &Point| l.dist(p) > tiny) {
            pts.push(p);
        }
    }
    // drop straight-through vertices
    let mut kept: Vec<Point> = Vec::with_capacity(pts.len());
    for (k, &p) in pts.iter().enumerate() {
        kept.push(p);
        if k + 1 == pts.len() {
            break;
        }
        while kept.len() >= 3 {
            let m = kept.len();
            let (a, b, c) = (kept[m - 3], kept[m - 2], kept[m - 1]);
            match turning_angle(b - a, c - b) {
                Ok(t) if t.abs() < ZERO_TURN => {
                    kept.remove(m - 2);
                }
                _ => break,
            }
        }
    }
    while kept.len() >= 3 {
        let m = kept.len();
        let (a, b, c) = (kept[m - 3], kept[m - 2], kept[m - 1]);
        match turning_angle(b - a, c - b) {
            Ok(t) if t.abs() < ZERO_TURN => {
                kept.remove(m - 2);
            }
            _ => break,
        }
    }
    // insert touched reflex vertices
    let eps = poly.boundary_eps();
    let mut out: Vec<Point> = Vec::with_capacity(kept.len());
    for w in kept.windows(2) {
        let (a, b) = (w[0], w[1]);
        out.push(a);
        let seg = crate::geom::Segment::new(a, b);
        let mut touched: Vec<(f64, Point)> = (0..poly.len())
            .filter(|&i| poly.is_reflex(i))
            .map(|i| poly.vertex(i))
            .filter(|&v| v.dist(a) > eps && v.dist(b) > eps && seg.dist_to_point(v) <= eps)
            .map(|v| (seg.project_param(v), v))
            .collect();
        touched.sort_by(|x, y| x.0.total_cmp(&y.0));
        out.extend(touched.into_iter().map(|(_, v)| v));
    }
    out.push(*kept.last().unwrap());
    GeodesicPath::new(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TautViolationKind {
    /// Bend at a point that is not a polygon vertex.
    NotPolygonVertex,
    /// Bend at a convex polygon vertex.
    NotReflex,
    /// Bend does not wrap the reflex wedge (the path could be shortened).
    WedgeNotWrapped,
    /// A segment leaves the closed polygon.
    SegmentOutside,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TautViolation {
    pub index: usize,
    pub point: Point,
    pub kind: TautViolationKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TautReport {
    pub ok: bool,
    pub violations: Vec<TautViolation>,
}

/// Discrete half-disk support check at every interior vertex of `path`.
pub fn validate_taut(poly: &SimplePolygon, path: &GeodesicPath) -> TautReport {
    let pts = path.points();
    let eps = poly.boundary_eps();
    let mut violations = Vec::new();
    for (k, w) in pts.windows(2).enumerate() {
        if !poly.segment_inside_closed(w[0], w[1]) {
            violations.push(TautViolation { index: k, point: w[0], kind: TautViolationKind::SegmentOutside });
        }
    }
    for k in 1..pts.len().saturating_sub(1) {
        let (prev, v, next) = (pts[k - 1], pts[k], pts[k + 1]);
        let turn = turning_angle(v - prev, next - v).unwrap_or(0.0);
        let push = |kind, violations: &mut Vec<TautViolation>| violations.push(TautViolation { index: k, point: v, kind });
        let Some(j) = poly.vertex_index_near(v, eps) else {
            push(TautViolationKind::NotPolygonVertex, &mut violations);
            continue;
        };
        if !poly.is_reflex(j) {
            if turn.abs() >= ZERO_TURN {
                push(TautViolationKind::NotReflex, &mut violations);
            }
            continue;
        }
        let w_prev = poly.vertex(j + poly.len() - 1) - v;
        let w_next = poly.vertex(j + 1) - v;
        let (a, b) = (prev - v, next - v);
        // exterior wedge runs CCW from w_prev to w_next; it must sit inside
        // the sector on the inner side of the turn
        let inside = |from: Point, to: Point| {
            let wrap = |x: f64| if x > 2.0 * std::f64::consts::PI - WEDGE_TOL { 0.0 } else { x };
            let a1 = wrap(ccw_angle(from, w_prev));
            let a2 = wrap(ccw_angle(from, w_next));
            let span = ccw_angle(from, to);
            a1 <= a2 + WEDGE_TOL && a2 <= span + WEDGE_TOL
        };
        let ok = if turn > ZERO_TURN {
            inside(b, a)
        } else if turn < -ZERO_TURN {
            inside(a, b)
        } else {
            inside(b, a) || inside(a, b)
        };
        if !ok {
            push(TautViolationKind::WedgeNotWrapped, &mut violations);
        }
    }
    TautReport { ok: violations.is_empty(), violations }
}
