//! Chords and the separation criterion for geodesic membership.
//!
//! A chord splits the polygon into two components. Component `A` is the one
//! bounded by the chord and the boundary arc running counter-clockwise from
//! the chord's first endpoint to its second.

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::geom::{Point, Segment};
use crate::polygon::{crossing_inside, SimplePolygon};

use super::GeodesicPath;

pub const DEFAULT_CHORD_CAP: usize = 200;

/// Points sampled along a path per unit of [`check_separation`].
const PATH_SAMPLES: usize = 33;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub segment: Segment,
    /// Boundary positions (`edge + t`) of the two endpoints.
    pos_a: f64,
    pos_b: f64,
}

impl Chord {
    pub fn new(poly: &SimplePolygon, a: Point, b: Point) -> Result<Self> {
        let segment = Segment::new(a, b);
        if !poly.is_chord(segment) {
            return Err(GeoError::InvalidChord);
        }
        let pos_a = poly.boundary_position(a).ok_or(GeoError::InvalidChord)?;
        let pos_b = poly.boundary_position(b).ok_or(GeoError::InvalidChord)?;
        Ok(Chord { segment, pos_a, pos_b })
    }

    pub fn a(&self) -> Point {
        self.segment.a
    }

    pub fn b(&self) -> Point {
        self.segment.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChordSide {
    A,
    B,
    On,
}

impl ChordSide {
    fn opposite(self) -> ChordSide {
        match self {
            ChordSide::A => ChordSide::B,
            ChordSide::B => ChordSide::A,
            ChordSide::On => ChordSide::On,
        }
    }
}

/// `pos` lies strictly inside the CCW boundary arc from `from` to `to`.
fn in_arc(pos: f64, from: f64, to: f64, n: f64) -> bool {
    let rel = |x: f64| (x - from).rem_euclid(n);
    let (p, t) = (rel(pos), rel(to));
    p > 0.0 && p < t
}

/// Boundary loop of component `A`.
fn component_a_loop(poly: &SimplePolygon, chord: &Chord) -> Vec<Point> {
    let n = poly.len();
    let mut pts = vec![chord.a()];
    let start = chord.pos_a.floor() as usize;
    for step in 1..=n {
        let k = (start + step) % n;
        if in_arc(k as f64, chord.pos_a, chord.pos_b, n as f64) {
            pts.push(poly.vertex(k));
        }
    }
    pts.push(chord.b());
    pts
}

pub fn side_of_chord(poly: &SimplePolygon, chord: &Chord, x: Point) -> ChordSide {
    let eps = poly.boundary_eps();
    if chord.segment.dist_to_point(x) <= eps {
        return ChordSide::On;
    }
    if let Some(pos) = poly.boundary_position(x) {
        let n = poly.len() as f64;
        return if in_arc(pos, chord.pos_a, chord.pos_b, n) { ChordSide::A } else { ChordSide::B };
    }
    if crossing_inside(&component_a_loop(poly, chord), x) {
        ChordSide::A
    } else {
        ChordSide::B
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationViolation {
    pub chord: Segment,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub ok: bool,
    pub chords_tested: usize,
    pub points_tested: usize,
    pub violations: Vec<SeparationViolation>,
}

/// Checks that no chord separates a point of `path` from both endpoints.
pub fn check_separation(poly: &SimplePolygon, path: &GeodesicPath, chords: &[Chord]) -> SeparationReport {
    let mut samples: Vec<Point> = path.points().to_vec();
    samples.extend(path.sample(PATH_SAMPLES).into_iter().map(|(_, p)| p));
    let mut violations = Vec::new();
    for chord in chords {
        let sp = side_of_chord(poly, chord, path.source());
        let sq = side_of_chord(poly, chord, path.target());
        let forbidden = match (sp, sq) {
            (ChordSide::On, ChordSide::On) => None,
            (ChordSide::On, s) | (s, ChordSide::On) => Some(s.opposite()),
            (s, t) if s == t => Some(s.opposite()),
            _ => None,
        };
        let Some(forbidden) = forbidden else { continue };
        if let Some(&x) = samples.iter().find(|&&x| side_of_chord(poly, chord, x) == forbidden) {
            violations.push(SeparationViolation { chord: chord.segment, point: x });
        }
    }
    SeparationReport { ok: violations.is_empty(), chords_tested: chords.len(), points_tested: samples.len(), violations }
}

/// Chords between polygon vertices, in index order, up to `cap`.
pub fn sample_chords(poly: &SimplePolygon, cap: usize) -> Vec<Chord> {
    let n = poly.len();
    let mut out = Vec::new();
    'outer: for i in 0..n {
        for j in (i + 2)..n {
            if out.len() >= cap {
                break 'outer;
            }
            if i == 0 && j == n - 1 {
                continue;
            }
            if let Ok(c) = Chord::new(poly, poly.vertex(i), poly.vertex(j)) {
                out.push(c);
            }
        }
    }
    out
}

/// Chords obtained by extending each edge through its reflex endpoint until
/// the boundary is hit again.
fn reflex_extension_chords(poly: &SimplePolygon) -> Vec<Chord> {
    let n = poly.len();
    let mut out = Vec::new();
    for i in (0..n).filter(|&i| poly.is_reflex(i)) {
        let v = poly.vertex(i);
        for nb in [poly.vertex(i + n - 1), poly.vertex(i + 1)] {
            let dir = v - nb;
            if let Some((hit, _)) = poly.ray_hit(v, dir, Some(i)) {
                if let Ok(c) = Chord::new(poly, v, hit) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Best-effort search for a chord with `x` strictly on one side and both
/// `p` and `q` strictly on the other. `None` is inconclusive.
pub fn find_separating_chord(poly: &SimplePolygon, x: Point, p: Point, q: Point) -> Option<Chord> {
    let mut candidates = reflex_extension_chords(poly);
    candidates.extend(sample_chords(poly, usize::MAX));
    candidates.into_iter().find(|c| {
        let sx = side_of_chord(poly, c, x);
        sx != ChordSide::On && side_of_chord(poly, c, p) == sx.opposite() && side_of_chord(poly, c, q) == sx.opposite()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::polygon::PolygonKind;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn sides_in_l_shape() {
        let d = Domain::generated(&PolygonKind::LShape).unwrap();
        let c = Chord::new(&d.polygon, pt(1., 0.), pt(1., 1.)).unwrap();
        assert_eq!(side_of_chord(&d.polygon, &c, pt(1.5, 0.5)), ChordSide::A);
        assert_eq!(side_of_chord(&d.polygon, &c, pt(0.5, 0.5)), ChordSide::B);
        assert_eq!(side_of_chord(&d.polygon, &c, pt(1., 0.5)), ChordSide::On);
        // boundary points
        assert_eq!(side_of_chord(&d.polygon, &c, pt(2., 0.5)), ChordSide::A);
        assert_eq!(side_of_chord(&d.polygon, &c, pt(0., 1.5)), ChordSide::B);
    }

    #[test]
    fn invalid_chord_rejected() {
        let d = Domain::generated(&PolygonKind::LShape).unwrap();
        assert_eq!(Chord::new(&d.polygon, pt(0.5, 0.5), pt(1., 1.)), Err(GeoError::InvalidChord));
    }

    #[test]
    fn l_shape_geodesic_not_separated() {
        let d = Domain::generated(&PolygonKind::LShape).unwrap();
        let g = d.geodesic(pt(1.5, 0.5), pt(0.5, 1.5)).unwrap();
        let c = Chord::new(&d.polygon, pt(1., 0.), pt(1., 1.)).unwrap();
        assert!(check_separation(&d.polygon, &g, &[c]).ok);
        let chords = sample_chords(&d.polygon, DEFAULT_CHORD_CAP);
        assert!(!chords.is_empty());
        assert!(check_separation(&d.polygon, &g, &chords).ok);
    }

    #[test]
    fn witness_found_for_off_geodesic_point() {
        let d = Domain::generated(&PolygonKind::LShape).unwrap();
        let w = find_separating_chord(&d.polygon, pt(1.5, 0.5), pt(0.2, 1.8), pt(0.2, 0.2)).unwrap();
        assert!(w.segment.a.dist(pt(1., 1.)) < 1e-12 || w.segment.b.dist(pt(1., 1.)) < 1e-12);
        // a point on the geodesic has no witness
        assert!(find_separating_chord(&d.polygon, pt(0.2, 1.0), pt(0.2, 1.8), pt(0.2, 0.2)).is_none());
    }

    #[test]
    fn corrupted_path_is_separated() {
        let d = Domain::generated(&PolygonKind::LShape).unwrap();
        let c = Chord::new(&d.polygon, pt(1., 0.), pt(1., 1.)).unwrap();
        let detour = GeodesicPath::new(vec![pt(0.2, 1.8), pt(1.5, 0.5), pt(0.2, 0.2)]);
        let r = check_separation(&d.polygon, &detour, &[c]);
        assert!(!r.ok);
    }

    #[test]
    fn convex_polygon_never_separates() {
        let d = Domain::generated(&PolygonKind::Square).unwrap();
        let chords = sample_chords(&d.polygon, DEFAULT_CHORD_CAP);
        assert_eq!(chords.len(), 2);
        let g = d.geodesic(pt(0.1, 0.2), pt(0.3, 0.1)).unwrap();
        assert!(check_separation(&d.polygon, &g, &chords).ok);
    }
}
