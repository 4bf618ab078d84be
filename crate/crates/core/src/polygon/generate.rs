//! Deterministic test-domain generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::geom::{segments_intersect, Point, Segment};

use super::{validate, validate_with, SimplePolygon, ValidateOptions};

/// Corridor width of the square spiral, as a fraction of the pitch.
const SPIRAL_WIDTH: f64 = 0.3;
const COMB_TOOTH_HEIGHT: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolygonKind {
    Square,
    LShape,
    Equilateral { side: f64 },
    /// Square spiral corridor with unit pitch.
    Spiral { turns: u32 },
    Comb { teeth: u32 },
    /// Koch snowflake refinement of the unit equilateral triangle.
    KochPrefix { level: u32 },
    /// Unit square with every edge split into `2^level` collinear pieces.
    SubdividedSquare { level: u32 },
    RandomSimple { n: usize, seed: u64 },
}

impl fmt::Display for PolygonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonKind::Square => write!(f, "square"),
            PolygonKind::LShape => write!(f, "l_shape"),
            PolygonKind::Equilateral { side } => write!(f, "equilateral:{side}"),
            PolygonKind::Spiral { turns } => write!(f, "spiral:{turns}"),
            PolygonKind::Comb { teeth } => write!(f, "comb:{teeth}"),
            PolygonKind::KochPrefix { level } => write!(f, "koch_prefix:{level}"),
            PolygonKind::SubdividedSquare { level } => write!(f, "subdivided_square:{level}"),
            PolygonKind::RandomSimple { n, seed } => write!(f, "random_simple:{n}:{seed}"),
        }
    }
}

/// Parses `name[:arg[:arg]]`, e.g. `spiral:3` or `random_simple:40:7`.
impl FromStr for PolygonKind {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let bad = || GeoError::InvalidParameter(format!("cannot parse generator spec {s:?}"));
        let num = |i: usize, default: Option<&'static str>| -> Result<&str> { args.get(i).copied().or(default).ok_or_else(bad) };
        let kind = match name {
            "square" => PolygonKind::Square,
            "l_shape" => PolygonKind::LShape,
            "equilateral" => PolygonKind::Equilateral { side: num(0, Some("1"))?.parse().map_err(|_| bad())? },
            "spiral" => PolygonKind::Spiral { turns: num(0, Some("3"))?.parse().map_err(|_| bad())? },
            "comb" => PolygonKind::Comb { teeth: num(0, Some("4"))?.parse().map_err(|_| bad())? },
            "koch_prefix" => PolygonKind::KochPrefix { level: num(0, Some("2"))?.parse().map_err(|_| bad())? },
            "subdivided_square" => PolygonKind::SubdividedSquare { level: num(0, Some("1"))?.parse().map_err(|_| bad())? },
            "random_simple" => PolygonKind::RandomSimple {
                n: num(0, Some("20"))?.parse().map_err(|_| bad())?,
                seed: num(1, Some("0"))?.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        Ok(kind)
    }
}

pub fn generate(kind: &PolygonKind) -> Result<SimplePolygon> {
    match *kind {
        PolygonKind::Square => validate(&square(1)),
        PolygonKind::LShape => validate(&[
            Point::new(0., 0.),
            Point::new(2., 0.),
            Point::new(2., 1.),
            Point::new(1., 1.),
            Point::new(1., 2.),
            Point::new(0., 2.),
        ]),
        PolygonKind::Equilateral { side } => {
            if !(side.is_finite() && side > 0.0) {
                return Err(GeoError::InvalidParameter(format!("equilateral side must be > 0, got {side}")));
            }
            validate(&[Point::new(0., 0.), Point::new(side, 0.), Point::new(0.5 * side, 0.5 * 3f64.sqrt() * side)])
        }
        PolygonKind::Spiral { turns } => {
            if turns < 1 {
                return Err(GeoError::InvalidParameter("spiral turns must be >= 1".into()));
            }
            validate(&spiral(turns))
        }
        PolygonKind::Comb { teeth } => {
            if teeth < 1 {
                return Err(GeoError::InvalidParameter("comb teeth must be >= 1".into()));
            }
            validate(&comb(teeth))
        }
        PolygonKind::KochPrefix { level } => {
            if level > 7 {
                return Err(GeoError::InvalidParameter(format!("koch level {level} too large (max 7)")));
            }
            validate(&koch(level))
        }
        PolygonKind::SubdividedSquare { level } => {
            if level > 10 {
                return Err(GeoError::InvalidParameter(format!("subdivision level {level} too large (max 10)")));
            }
            validate_with(&square(1 << level), ValidateOptions { keep_collinear: true })
        }
        PolygonKind::RandomSimple { n, seed } => {
            if !(3..=2000).contains(&n) {
                return Err(GeoError::InvalidParameter(format!("random_simple needs 3 <= n <= 2000, got {n}")));
            }
            validate(&random_simple(n, seed))
        }
    }
}

fn square(pieces: usize) -> Vec<Point> {
    let corners = [Point::new(0., 0.), Point::new(1., 0.), Point::new(1., 1.), Point::new(0., 1.)];
    let mut out = Vec::with_capacity(4 * pieces);
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        for j in 0..pieces {
            out.push(a.lerp(b, j as f64 / pieces as f64));
        }
    }
    out
}

/// Square spiral centerline with segment lengths 1,1,2,2,3,3,... turning
/// left, thickened to a corridor of width `SPIRAL_WIDTH`.
fn spiral(turns: u32) -> Vec<Point> {
    let dirs = [Point::new(1., 0.), Point::new(0., 1.), Point::new(-1., 0.), Point::new(0., -1.)];
    let segs = 4 * turns as usize;
    let mut center = vec![Point::new(0., 0.)];
    for k in 0..segs {
        let len = (k / 2 + 1) as f64;
        let last = *center.last().unwrap();
        center.push(last + dirs[k % 4] * len);
    }
    let h = 0.5 * SPIRAL_WIDTH;
    let left_normal = |d: Point| Point::new(-d.y, d.x);
    let offset = |i: usize| -> Point {
        // miter offset; exact for the 90 degree corners used here
        if i == 0 {
            left_normal(dirs[0]) * h
        } else if i == segs {
            left_normal(dirs[(segs - 1) % 4]) * h
        } else {
            (left_normal(dirs[(i - 1) % 4]) + left_normal(dirs[i % 4])) * h
        }
    };
    let mut poly: Vec<Point> = (0..=segs).map(|i| center[i] - offset(i)).collect();
    poly.extend((0..=segs).rev().map(|i| center[i] + offset(i)));
    poly
}

fn comb(teeth: u32) -> Vec<Point> {
    let w = (2 * teeth - 1) as f64;
    let top = 1.0 + COMB_TOOTH_HEIGHT;
    let mut v = vec![Point::new(0., 0.), Point::new(w, 0.)];
    for i in (0..teeth).rev() {
        let x0 = 2.0 * i as f64;
        v.push(Point::new(x0 + 1.0, top));
        v.push(Point::new(x0, top));
        if i > 0 {
            v.push(Point::new(x0, 1.0));
            v.push(Point::new(x0 - 1.0, 1.0));
        }
    }
    v
}

fn koch(level: u32) -> Vec<Point> {
    let mut v = vec![Point::new(0., 0.), Point::new(1., 0.), Point::new(0.5, 0.5 * 3f64.sqrt())];
    for _ in 0..level {
        let n = v.len();
        let mut out = Vec::with_capacity(4 * n);
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let d = (b - a) * (1.0 / 3.0);
            let p1 = a + d;
            // CCW loop: outward is to the right of the edge direction
            let peak = p1 + d.rotate(-std::f64::consts::FRAC_PI_3);
            out.extend([a, p1, peak, a + d * 2.0]);
        }
        v = out;
    }
    v
}

/// Index of the tracked "deep" vertex of `koch_prefix(level)`: the start of
/// the nested sub-edge with address `1, 1, ..., 1` inside edge 0.
pub fn koch_deep_vertex_index(level: u32) -> usize {
    ((4usize.pow(level)) - 1) / 3
}

/// Random loop over uniform points, untangled by 2-opt moves until simple.
fn random_simple(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = (0..n).map(|_| Point::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect();
    pts.shuffle(&mut rng);
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let e1 = Segment::new(pts[i], pts[(i + 1) % n]);
                let e2 = Segment::new(pts[j], pts[(j + 1) % n]);
                if segments_intersect(e1, e2) {
                    pts[i + 1..=j].reverse();
                    changed = true;
                }
            }
        }
        if !changed {
            return pts;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_diameter_is_side() {
        let p = generate(&PolygonKind::Equilateral { side: 1.0 }).unwrap();
        assert!((p.diameter() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn koch_edge_counts() {
        for level in 0..5 {
            let p = generate(&PolygonKind::KochPrefix { level }).unwrap();
            assert_eq!(p.len(), 3 * 4usize.pow(level));
        }
        let k0 = generate(&PolygonKind::KochPrefix { level: 0 }).unwrap();
        assert!((k0.diameter() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn koch_deep_vertex_converges() {
        let mut prev: Option<Point> = None;
        for level in 1..6 {
            let p = generate(&PolygonKind::KochPrefix { level }).unwrap();
            let q = p.vertex(koch_deep_vertex_index(level));
            if let Some(pq) = prev {
                assert!(q.dist(pq) <= 3f64.powi(-(level as i32 - 1)) + 1e-12);
            }
            prev = Some(q);
        }
    }

    #[test]
    fn every_generator_validates() {
        for spec in ["square", "l_shape", "equilateral:2", "spiral:1", "spiral:3", "comb:1", "comb:4", "koch_prefix:0", "koch_prefix:3", "subdivided_square:3", "random_simple:3:1", "random_simple:60:9"] {
            let kind: PolygonKind = spec.parse().unwrap();
            let p = generate(&kind).unwrap();
            assert!(p.area() > 0.0, "{spec}");
            assert_eq!(kind.to_string().parse::<PolygonKind>().unwrap(), kind);
        }
    }

    #[test]
    fn random_simple_deterministic() {
        let a = generate(&PolygonKind::RandomSimple { n: 30, seed: 5 }).unwrap();
        let b = generate(&PolygonKind::RandomSimple { n: 30, seed: 5 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_parameters() {
        for kind in [
            PolygonKind::Spiral { turns: 0 },
            PolygonKind::Comb { teeth: 0 },
            PolygonKind::Equilateral { side: -1.0 },
            PolygonKind::RandomSimple { n: 2, seed: 0 },
        ] {
            assert!(matches!(generate(&kind), Err(GeoError::InvalidParameter(_))));
        }
        assert!("hexagon".parse::<PolygonKind>().is_err());
    }
}
