//! Geodesic triangles and the comparison-geometry checks built on them.
//!
//! A geodesic triangle `pqr` splits into three tails (the common prefixes of
//! the two sides leaving each vertex) and a Jordan-triangle core with
//! corners at the bifurcation points `p̄, q̄, r̄`. Core sides are stored in
//! loop order: `gamma` runs `p̄ -> q̄`, `rho` runs `q̄ -> r̄`, `tau` runs
//! `r̄ -> p̄`.
//!
//! Sign conventions: turning angles are measured with the core loop
//! oriented counter-clockwise, so a side that bends away from the core
//! interior has negative total turn.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::{GeoError, Result};
use crate::geodesic::GeodesicPath;
use crate::geom::{signed_area, turning_angle, Point};
use crate::polygon::{convex_hull, crossing_inside, segment_in_closed_loop};
use crate::sampling::UniformSampler;

/// Relative coincidence tolerance for bifurcation detection.
pub const COINCIDENCE_REL: f64 = 1e-9;
/// Thinness, hyperbolicity and distance-convexity tolerance, relative to D.
pub const METRIC_TOL_REL: f64 = 1e-7;
/// Perimeter-bound tolerance, relative to D.
pub const PERIMETER_TOL_REL: f64 = 1e-9;
/// Absolute tolerance (radians) for the turning and angle-sum checks.
pub const ANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanTriangle {
    /// Outer vertices `p, q, r`.
    pub vertices: [Point; 3],
    /// Full sides `pq, qr, rp`.
    pub sides: [GeodesicPath; 3],
    /// `p̄, q̄, r̄`.
    pub bifurcation: [Point; 3],
    /// Tails `p -> p̄`, `q -> q̄`, `r -> r̄`.
    pub tails: [GeodesicPath; 3],
    /// Core sides in loop order `gamma, rho, tau`.
    pub core: [GeodesicPath; 3],
    pub core_perimeter: f64,
    pub degenerate: bool,
}

impl JordanTriangle {
    pub fn gamma(&self) -> &GeodesicPath {
        &self.core[0]
    }

    pub fn rho(&self) -> &GeodesicPath {
        &self.core[1]
    }

    pub fn tau(&self) -> &GeodesicPath {
        &self.core[2]
    }

    pub fn side_lengths(&self) -> [f64; 3] {
        [self.sides[0].total_length(), self.sides[1].total_length(), self.sides[2].total_length()]
    }

    /// Closed core loop `p̄ -> q̄ -> r̄ -> p̄` without the repeated start point.
    pub fn core_loop(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = Vec::new();
        for side in &self.core {
            for &p in side.points() {
                if pts.last() != Some(&p) {
                    pts.push(p);
                }
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        pts
    }

    /// Each full side equals tail, core side and reversed tail glued together.
    pub fn reassembles(&self, tol: f64) -> bool {
        (0..3).all(|k| {
            let glued = self.tails[k].concat(&self.core[k]).concat(&self.tails[(k + 1) % 3].reversed());
            same_polyline(&self.sides[k], &glued, tol)
        })
    }
}

/// Same polyline up to extra straight-through junction points in `b`.
fn same_polyline(a: &GeodesicPath, b: &GeodesicPath, tol: f64) -> bool {
    let mut bp: Vec<Point> = Vec::with_capacity(b.points().len());
    for &p in b.points() {
        if bp.last().is_none_or(|l| l.dist(p) > tol) {
            bp.push(p);
        }
    }
    let mut filtered: Vec<Point> = Vec::with_capacity(bp.len());
    for (i, &p) in bp.iter().enumerate() {
        let is_vertex_of_a = a.points().iter().any(|v| v.dist(p) <= tol);
        let interior = i > 0 && i + 1 < bp.len();
        let straight = interior && turning_angle(p - bp[i - 1], bp[i + 1] - p).map_or(true, |t| t.abs() < 1e-9);
        if is_vertex_of_a || !straight {
            filtered.push(p);
        }
    }
    filtered.len() == a.points().len() && filtered.iter().zip(a.points()).all(|(x, y)| x.dist(*y) <= tol)
}

/// Arclength of the maximal common prefix of two paths with a common source.
pub fn common_prefix_length(a: &GeodesicPath, b: &GeodesicPath, tol: f64) -> f64 {
    let (pa, pb) = (a.points(), b.points());
    if pa[0].dist(pb[0]) > tol {
        return 0.0;
    }
    let (mut i, mut j) = (0usize, 0usize);
    let mut cur = pa[0];
    let mut s = 0.0;
    loop {
        if i + 1 >= pa.len() || j + 1 >= pb.len() {
            return s;
        }
        let (na, nb) = (pa[i + 1], pb[j + 1]);
        if na.dist(nb) <= tol {
            s += cur.dist(na);
            cur = na;
            i += 1;
            j += 1;
            continue;
        }
        let (da, db) = (na - cur, nb - cur);
        let (la, lb) = (da.norm(), db.norm());
        if la <= tol {
            i += 1;
            continue;
        }
        if lb <= tol {
            j += 1;
            continue;
        }
        if da.dot(db) <= 0.0 {
            return s;
        }
        if la < lb {
            // does the nearer point of a lie on b's current segment?
            if db.cross(da).abs() / lb <= tol {
                s += la;
                cur = na;
                i += 1;
                continue;
            }
        } else if da.cross(db).abs() / la <= tol {
            s += lb;
            cur = nb;
            j += 1;
            continue;
        }
        return s;
    }
}

pub fn decompose_triangle(dom: &Domain, p: Point, q: Point, r: Point) -> Result<JordanTriangle> {
    let tol = COINCIDENCE_REL * dom.diameter();
    let sides = [dom.geodesic(p, q)?, dom.geodesic(q, r)?, dom.geodesic(r, p)?];
    let vertices = [sides[0].source(), sides[1].source(), sides[2].source()];
    let lens = [sides[0].total_length(), sides[1].total_length(), sides[2].total_length()];
    // tail at vertex k: common prefix of side k and the reversed previous side
    let tail_len: [f64; 3] = std::array::from_fn(|k| {
        let prev = &sides[(k + 2) % 3];
        common_prefix_length(&sides[k], &prev.reversed(), tol).min(lens[k]).min(prev.total_length())
    });
    let bifurcation: [Point; 3] = std::array::from_fn(|k| sides[k].at(tail_len[k]));
    let core: [GeodesicPath; 3] = std::array::from_fn(|k| {
        let s0 = tail_len[k];
        let s1 = (lens[k] - tail_len[(k + 1) % 3]).max(s0);
        pin_ends(&sides[k].subpath(s0, s1), bifurcation[k], bifurcation[(k + 1) % 3], tol)
    });
    let tails: [GeodesicPath; 3] = std::array::from_fn(|k| pin_ends(&sides[k].subpath(0.0, tail_len[k]), vertices[k], bifurcation[k], tol));
    let core_perimeter: f64 = core.iter().map(|c| c.total_length()).sum();

    let mut t = JordanTriangle { vertices, sides, bifurcation, tails, core, core_perimeter, degenerate: false };
    let area = signed_area(&t.core_loop()).abs();
    let d = dom.diameter();
    t.degenerate = core_perimeter <= tol || area <= 1e-12 * d * d || t.core.iter().any(|c| c.total_length() <= tol);
    if t.degenerate {
        // all three sides meet at one point
        let m0 = t.bifurcation[0];
        let m = t.vertices.iter().copied().find(|v| v.dist(m0) <= tol).unwrap_or(m0);
        t.bifurcation = [m; 3];
        t.tails = std::array::from_fn(|k| pin_ends(&t.tails[k], t.vertices[k], m, tol));
        t.core = std::array::from_fn(|_| GeodesicPath::point(m));
        t.core_perimeter = 0.0;
    }
    Ok(t)
}

/// Replaces the ends of `path` by exactly `a` and `b`, dropping vertices
/// within `tol` of either; arclength round-off would otherwise leave slivers.
fn pin_ends(path: &GeodesicPath, a: Point, b: Point, tol: f64) -> GeodesicPath {
    if a.dist(b) <= tol {
        return GeodesicPath::point(b);
    }
    let mut pts = vec![a];
    pts.extend(path.points().iter().copied().filter(|x| x.dist(a) > tol && x.dist(b) > tol));
    pts.push(b);
    GeodesicPath::new(pts)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTriangle {
    /// Lengths of `pq, qr, rp`.
    pub side_lengths: [f64; 3],
    pub vertices: [Point; 3],
    pub degenerate: bool,
}

impl ComparisonTriangle {
    pub fn from_lengths(side_lengths: [f64; 3]) -> Self {
        let [a, b, c] = side_lengths;
        let v0 = Point::new(0.0, 0.0);
        let v1 = Point::new(a, 0.0);
        let v2 = if a > 0.0 {
            let x = (a * a + c * c - b * b) / (2.0 * a);
            Point::new(x, (c * c - x * x).max(0.0).sqrt())
        } else {
            Point::new(c, 0.0)
        };
        let m = a.max(b).max(c);
        let degenerate = m == 0.0 || 2.0 * m >= a + b + c - 1e-12 * m;
        ComparisonTriangle { side_lengths, vertices: [v0, v1, v2], degenerate }
    }

    /// Point at arclength `s` along comparison side `side` (0: pq, 1: qr, 2: rp).
    pub fn comparison_point(&self, side: usize, s: f64) -> Point {
        let (a, b) = (self.vertices[side], self.vertices[(side + 1) % 3]);
        let len = self.side_lengths[side];
        if len == 0.0 {
            return a;
        }
        a.lerp(b, (s / len).clamp(0.0, 1.0))
    }

    pub fn area(&self) -> f64 {
        0.5 * (self.vertices[1] - self.vertices[0]).cross(self.vertices[2] - self.vertices[0]).abs()
    }
}

pub fn comparison_triangle(t: &JordanTriangle) -> ComparisonTriangle {
    ComparisonTriangle::from_lengths(t.side_lengths())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThinnessWitness {
    pub x: Point,
    pub y: Point,
    pub intrinsic: f64,
    pub comparison: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThinnessReport {
    pub max_excess: f64,
    pub pairs: usize,
    pub ok: bool,
    pub witness: Option<ThinnessWitness>,
}

/// Compares intrinsic and comparison distances over all pairs of side samples.
pub fn check_thinness(dom: &Domain, t: &JordanTriangle, samples_per_side: usize) -> Result<ThinnessReport> {
    let samples_per_side = samples_per_side.max(2);
    let cmp = comparison_triangle(t);
    let mut pts: Vec<(Point, Point)> = Vec::with_capacity(3 * samples_per_side);
    for k in 0..3 {
        for (s, x) in t.sides[k].sample(samples_per_side) {
            pts.push((x, cmp.comparison_point(k, s)));
        }
    }
    let mut max_excess = f64::NEG_INFINITY;
    let mut witness = None;
    let mut pairs = 0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let (x, xb) = pts[i];
            let (y, yb) = pts[j];
            let d = dom.distance(x, y)?;
            let db = xb.dist(yb);
            pairs += 1;
            if d - db > max_excess {
                max_excess = d - db;
                witness = Some(ThinnessWitness { x, y, intrinsic: d, comparison: db });
            }
        }
    }
    let ok = max_excess <= METRIC_TOL_REL * dom.diameter();
    Ok(ThinnessReport { max_excess, pairs, ok, witness })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideConvexityReport {
    pub per_side_total_turn: [f64; 3],
    pub sign_consistent: [bool; 3],
    pub per_side_ok: bool,
    pub turn_sum: f64,
    pub sum_bound_ok: bool,
    pub angles: [f64; 3],
    pub angle_sum: f64,
    pub angle_sum_ok: bool,
    pub ok: bool,
}

pub fn check_side_convexity(t: &JordanTriangle) -> Result<SideConvexityReport> {
    if t.degenerate {
        return Err(GeoError::DegenerateTriangle);
    }
    let orientation = signed_area(&t.core_loop()).signum();
    let mut per_side_total_turn = [0.0; 3];
    let mut sign_consistent = [true; 3];
    for (k, side) in t.core.iter().enumerate() {
        let pts = side.points();
        let turns: Vec<f64> = (1..pts.len().saturating_sub(1))
            .map(|i| orientation * turning_angle(pts[i] - pts[i - 1], pts[i + 1] - pts[i]).unwrap_or(0.0))
            .collect();
        per_side_total_turn[k] = turns.iter().sum();
        sign_consistent[k] = turns.iter().all(|&a| a <= ANGLE_TOL) || turns.iter().all(|&a| a >= -ANGLE_TOL);
    }
    // interior angle at the start of core side k, between the incoming
    // side's last segment and the outgoing side's first segment
    let angles: [f64; 3] = std::array::from_fn(|k| {
        let incoming = t.core[(k + 2) % 3].points();
        let outgoing = t.core[k].points();
        let n = incoming.len();
        let din = incoming[n - 1] - incoming[n - 2];
        let dout = outgoing[1] - outgoing[0];
        PI - orientation * turning_angle(din, dout).unwrap_or(0.0)
    });
    let turn_sum: f64 = per_side_total_turn.iter().sum();
    let angle_sum: f64 = angles.iter().sum();
    let per_side_ok = per_side_total_turn.iter().all(|&a| a <= ANGLE_TOL) && sign_consistent.iter().all(|&b| b);
    let sum_bound_ok = turn_sum >= -PI - ANGLE_TOL;
    let angle_sum_ok = angle_sum <= 2.0 * PI + ANGLE_TOL;
    Ok(SideConvexityReport {
        per_side_total_turn,
        sign_consistent,
        per_side_ok,
        turn_sum,
        sum_bound_ok,
        angles,
        angle_sum,
        angle_sum_ok,
        ok: per_side_ok && sum_bound_ok && angle_sum_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerimeterReport {
    pub core_perimeter: f64,
    pub bound_4d: f64,
    pub ok: bool,
}

pub fn check_perimeter_bound(t: &JordanTriangle, diameter: f64) -> PerimeterReport {
    let bound_4d = 4.0 * diameter;
    PerimeterReport {
        core_perimeter: t.core_perimeter,
        bound_4d,
        ok: t.core_perimeter <= bound_4d + PERIMETER_TOL_REL * diameter,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncenterWitness {
    pub m: Point,
    /// `|m p̄| + |m q̄|`, `|m q̄| + |m r̄|`, `|m r̄| + |m p̄|`, matching `gamma, rho, tau`.
    pub segment_sums: [f64; 3],
    pub side_lengths: [f64; 3],
    pub ok: bool,
}

/// Grid resolution of the fallback search in [`incenter_witness`].
const WITNESS_GRID: usize = 24;

/// Searches the core region for a point that sees all three bifurcation
/// points. `Ok(None)` means the search was inconclusive.
pub fn incenter_witness(dom: &Domain, t: &JordanTriangle) -> Result<Option<IncenterWitness>> {
    if t.degenerate {
        return Err(GeoError::DegenerateTriangle);
    }
    let core_loop = t.core_loop();
    let eps = dom.eps();
    let [pb, qb, rb] = t.bifurcation;

    let mut candidates = Vec::new();
    // Euclidean incenter of p̄ q̄ r̄
    let (a, b, c) = (qb.dist(rb), rb.dist(pb), pb.dist(qb));
    if a + b + c > 0.0 {
        candidates.push((pb * a + qb * b + rb * c) * (1.0 / (a + b + c)));
    }
    candidates.push(area_centroid(&core_loop));
    let hull = convex_hull(&core_loop);
    let (mut lo, mut hi) = (hull[0], hull[0]);
    for h in &hull {
        lo = Point::new(lo.x.min(h.x), lo.y.min(h.y));
        hi = Point::new(hi.x.max(h.x), hi.y.max(h.y));
    }
    for i in 0..WITNESS_GRID {
        for j in 0..WITNESS_GRID {
            let fx = (i as f64 + 0.5) / WITNESS_GRID as f64;
            let fy = (j as f64 + 0.5) / WITNESS_GRID as f64;
            candidates.push(Point::new(lo.x + (hi.x - lo.x) * fx, lo.y + (hi.y - lo.y) * fy));
        }
    }

    let lens = [t.core[0].total_length(), t.core[1].total_length(), t.core[2].total_length()];
    let tol = METRIC_TOL_REL * dom.diameter();
    for m in candidates {
        if !crossing_inside(&core_loop, m) {
            continue;
        }
        if [pb, qb, rb].iter().all(|&x| segment_in_closed_loop(&core_loop, m, x, eps)) {
            let (dp, dq, dr) = (m.dist(pb), m.dist(qb), m.dist(rb));
            let segment_sums = [dp + dq, dq + dr, dr + dp];
            let ok = (0..3).all(|k| lens[k] <= segment_sums[k] + tol);
            return Ok(Some(IncenterWitness { m, segment_sums, side_lengths: lens, ok }));
        }
    }
    Ok(None)
}

fn area_centroid(pts: &[Point]) -> Point {
    let n = pts.len();
    let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (p, q) = (pts[i], pts[(i + 1) % n]);
        let w = p.cross(q);
        a2 += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    if a2 == 0.0 {
        let s = pts.iter().fold(Point::default(), |acc, &p| acc + p);
        return s * (1.0 / n as f64);
    }
    Point::new(cx / (3.0 * a2), cy / (3.0 * a2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaConfig {
    pub triangles: usize,
    pub points_per_side: usize,
    pub seed: u64,
    /// Also evaluate the max-perimeter triangle on hull vertices.
    pub include_extremal: bool,
}

impl Default for DeltaConfig {
    fn default() -> Self {
        DeltaConfig { triangles: 20, points_per_side: 16, seed: 0, include_extremal: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaWitness {
    pub triangle: [Point; 3],
    pub side: usize,
    pub point: Point,
    pub distance_to_other_sides: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaEstimate {
    pub delta_lower: f64,
    pub bound: f64,
    pub samples: usize,
    pub triangles: usize,
    pub ok: bool,
    pub witness: Option<DeltaWitness>,
}

const GOLDEN_ITERS: usize = 60;

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
fn golden_min(mut lo: f64, mut hi: f64, f: &mut dyn FnMut(f64) -> Result<f64>) -> Result<(f64, f64)> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..GOLDEN_ITERS {
        if hi - lo <= 1e-13 * (1.0 + hi.abs()) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let (fl, fh) = (f(lo)?, f(hi)?);
    let best = [(x1, f1), (x2, f2), (lo, fl), (hi, fh)].into_iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    Ok(best)
}

/// Intrinsic distance from `x` to a side; `d(x, side(s))` is convex in `s`.
fn distance_to_side(dom: &Domain, x: Point, side: &GeodesicPath) -> Result<f64> {
    let len = side.total_length();
    if len == 0.0 {
        return dom.distance(x, side.source());
    }
    let (_, d) = golden_min(0.0, len, &mut |s| dom.distance(x, side.at(s)))?;
    Ok(d.min(dom.distance(x, side.source())?).min(dom.distance(x, side.target())?))
}

/// Largest distance from a point of one side to the union of the other two,
/// together with the side index and the point.
pub fn triangle_delta(dom: &Domain, sides: &[GeodesicPath; 3], points_per_side: usize) -> Result<(f64, usize, Point)> {
    let n = points_per_side.max(2);
    let mut best = (0.0, 0, sides[0].source());
    for k in 0..3 {
        let side = &sides[k];
        let others = [&sides[(k + 1) % 3], &sides[(k + 2) % 3]];
        let delta_at = |s: f64| -> Result<f64> {
            let x = side.at(s);
            Ok(distance_to_side(dom, x, others[0])?.min(distance_to_side(dom, x, others[1])?))
        };
        let samples = side.sample(n);
        let mut vals = Vec::with_capacity(n);
        for &(s, _) in &samples {
            vals.push(delta_at(s)?);
        }
        let (imax, &vmax) = vals.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let mut local = (samples[imax].0, vmax);
        if side.total_length() > 0.0 {
            let lo = samples[imax.saturating_sub(1)].0;
            let hi = samples[(imax + 1).min(n - 1)].0;
            let (s, neg) = golden_min(lo, hi, &mut |s| Ok(-delta_at(s)?))?;
            if -neg > local.1 {
                local = (s, -neg);
            }
        }
        if local.1 > best.0 {
            best = (local.1, k, side.at(local.0));
        }
    }
    Ok(best)
}

fn extremal_triangle(dom: &Domain) -> Option<[Point; 3]> {
    let mut hull = convex_hull(dom.polygon.vertices());
    if hull.len() < 3 {
        return None;
    }
    const CAP: usize = 64;
    if hull.len() > CAP {
        let step = hull.len() as f64 / CAP as f64;
        hull = (0..CAP).map(|i| hull[(i as f64 * step) as usize]).collect();
    }
    let mut best = (0.0, [hull[0], hull[1], hull[2]]);
    for i in 0..hull.len() {
        for j in (i + 1)..hull.len() {
            for k in (j + 1)..hull.len() {
                let per = hull[i].dist(hull[j]) + hull[j].dist(hull[k]) + hull[k].dist(hull[i]);
                if per > best.0 {
                    best = (per, [hull[i], hull[j], hull[k]]);
                }
            }
        }
    }
    Some(best.1)
}

/// Seeded triangle vertices: the extremal triangle (if enabled) followed by
/// `config.triangles` random triangles.
pub fn sample_triangles(dom: &Domain, config: &DeltaConfig) -> Vec<[Point; 3]> {
    let mut out = Vec::new();
    if config.include_extremal {
        out.extend(extremal_triangle(dom));
    }
    let sampler = UniformSampler::new(dom);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.triangles {
        out.push([
            sampler.mixed_point(dom, &mut rng),
            sampler.mixed_point(dom, &mut rng),
            sampler.mixed_point(dom, &mut rng),
        ]);
    }
    out
}

/// Lower estimate of the hyperbolicity constant over sampled triangles.
pub fn estimate_delta(dom: &Domain, config: &DeltaConfig) -> Result<DeltaEstimate> {
    let triangles = sample_triangles(dom, config);
    let d = dom.diameter();
    let mut best = 0.0f64;
    let mut witness = None;
    for tri in &triangles {
        let sides = [dom.geodesic(tri[0], tri[1])?, dom.geodesic(tri[1], tri[2])?, dom.geodesic(tri[2], tri[0])?];
        let (delta, side, point) = triangle_delta(dom, &sides, config.points_per_side)?;
        if delta > best || witness.is_none() {
            best = best.max(delta);
            witness = Some(DeltaWitness { triangle: *tri, side, point, distance_to_other_sides: delta });
        }
    }
    let bound = 3f64.sqrt() * d / 4.0;
    Ok(DeltaEstimate {
        delta_lower: best,
        bound,
        samples: triangles.len() * 3 * config.points_per_side.max(2),
        triangles: triangles.len(),
        ok: best <= bound + METRIC_TOL_REL * d,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceConvexityReport {
    pub values: Vec<f64>,
    pub max_violation: f64,
    pub ok: bool,
}

/// Midpoint convexity of `t -> d(g1(t L1), g2(t L2))` on `n` uniform samples.
pub fn check_distance_convexity(dom: &Domain, g1: &GeodesicPath, g2: &GeodesicPath, n: usize) -> Result<DistanceConvexityReport> {
    let n = n.max(3);
    let (l1, l2) = (g1.total_length(), g2.total_length());
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let t = k as f64 / (n - 1) as f64;
        values.push(dom.distance(g1.at(t * l1), g2.at(t * l2))?);
    }
    let mut max_violation = f64::NEG_INFINITY;
    for i in 0..n {
        for j in ((i + 2)..n).step_by(2) {
            let mid = (i + j) / 2;
            max_violation = max_violation.max(values[mid] - 0.5 * (values[i] + values[j]));
        }
    }
    let ok = max_violation <= METRIC_TOL_REL * dom.diameter();
    Ok(DistanceConvexityReport { values, max_violation, ok })
}
