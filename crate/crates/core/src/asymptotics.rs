//! Geodesic rays toward tracked boundary targets, shared tails, and cone
//! neighborhood probes over refinement families of domains.
//!
//! A polygon has no points at infinite distance, so a "ray" here is the
//! finite geodesic from a basepoint to a boundary vertex that a refinement
//! family tracks from level to level.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cat0::{common_prefix_length, COINCIDENCE_REL};
use crate::domain::Domain;
use crate::error::{GeoError, Result};
use crate::geodesic::GeodesicPath;
use crate::geom::Point;
use crate::polygon::{koch_deep_vertex_index, PolygonKind};
use crate::sampling::UniformSampler;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharedTail {
    /// Common terminal subpath, running from the junction to `r`.
    pub tail: GeodesicPath,
    pub tail_length: f64,
    /// Intrinsic distance from `p` (resp. `q`) to the junction.
    pub onset_p: f64,
    pub onset_q: f64,
}

pub fn shared_tail(dom: &Domain, p: Point, q: Point, r: Point) -> Result<SharedTail> {
    let rp = dom.geodesic(r, p)?;
    let rq = dom.geodesic(r, q)?;
    let len = common_prefix_length(&rp, &rq, COINCIDENCE_REL * dom.diameter()).min(rp.total_length()).min(rq.total_length());
    Ok(SharedTail {
        tail: rp.subpath(0.0, len).reversed(),
        tail_length: len,
        onset_p: rp.total_length() - len,
        onset_q: rq.total_length() - len,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeNeighborhood {
    pub basepoint: Point,
    pub ray: GeodesicPath,
    pub c: f64,
    pub epsilon: f64,
}

impl ConeNeighborhood {
    pub fn new(ray: GeodesicPath, c: f64, epsilon: f64) -> Result<Self> {
        if !(c > 0.0 && c < ray.total_length()) {
            return Err(GeoError::InvalidParameter(format!("C = {c} must lie in (0, {})", ray.total_length())));
        }
        if !(epsilon > 0.0) {
            return Err(GeoError::InvalidParameter(format!("epsilon = {epsilon} must be positive")));
        }
        Ok(ConeNeighborhood { basepoint: ray.source(), ray, c, epsilon })
    }

    pub fn toward(dom: &Domain, p: Point, q: Point, c: f64, epsilon: f64) -> Result<Self> {
        Self::new(dom.geodesic(p, q)?, c, epsilon)
    }

    /// The ball center `γ(C)`.
    pub fn center(&self) -> Point {
        self.ray.at(self.c)
    }

    pub fn target(&self) -> Point {
        self.ray.target()
    }
}

/// `d(p, x) > C` and the geodesic `p -> x` meets the closed ball `B(γ(C), ε)`.
pub fn cone_membership(dom: &Domain, nbhd: &ConeNeighborhood, x: Point) -> Result<bool> {
    let g = dom.geodesic(nbhd.basepoint, x)?;
    Ok(g.total_length() > nbhd.c && g.distance_to_point(nbhd.center()) <= nbhd.epsilon)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub angles: usize,
    pub radii: usize,
    /// Halvings of the radius (or epsilon) before giving up.
    pub max_halvings: usize,
    /// Bisection steps once a passing radius is bracketed.
    pub bisection_steps: usize,
    /// Uniform domain samples added to the cone-in-disk probe.
    pub domain_samples: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { angles: 64, radii: 16, max_halvings: 40, bisection_steps: 12, domain_samples: 512, seed: 0 }
    }
}

/// Polar grid of domain points within `radius` of `center`, plus polygon
/// vertices in range.
fn polar_samples(dom: &Domain, center: Point, radius: f64, cfg: &ProbeConfig) -> Vec<Point> {
    let mut out = Vec::with_capacity(cfg.angles * cfg.radii);
    for i in 1..=cfg.radii {
        let r = radius * i as f64 / cfg.radii as f64;
        for k in 0..cfg.angles {
            let th = std::f64::consts::TAU * k as f64 / cfg.angles as f64;
            let x = center + Point::new(th.cos(), th.sin()) * r;
            if dom.polygon.contains_closed(x) {
                out.push(x);
            }
        }
    }
    out.extend(dom.polygon.vertices().iter().copied().filter(|v| v.dist(center) <= radius));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskProbe {
    /// Largest passing radius; `None` means inconclusive.
    pub disk_radius: Option<f64>,
    pub radii_tested: usize,
    pub points_tested: usize,
}

fn all_members(dom: &Domain, nbhd: &ConeNeighborhood, pts: &[Point]) -> Result<bool> {
    for &x in pts {
        if !cone_membership(dom, nbhd, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest tested disk around the ray's target whose sampled points all lie
/// in the cone neighborhood.
pub fn probe_disk_inside_cone(dom: &Domain, nbhd: &ConeNeighborhood, cfg: &ProbeConfig) -> Result<DiskProbe> {
    let q = nbhd.target();
    let mut radii_tested = 0;
    let mut points_tested = 0;
    let mut test = |rho: f64| -> Result<bool> {
        let pts = polar_samples(dom, q, rho, cfg);
        radii_tested += 1;
        points_tested += pts.len();
        all_members(dom, nbhd, &pts)
    };
    let mut rho = dom.diameter();
    let mut failed_above = None;
    let mut found = None;
    for _ in 0..=cfg.max_halvings {
        if test(rho)? {
            found = Some(rho);
            break;
        }
        failed_above = Some(rho);
        rho *= 0.5;
    }
    if let (Some(mut lo), Some(mut hi)) = (found, failed_above) {
        for _ in 0..cfg.bisection_steps {
            let mid = 0.5 * (lo + hi);
            if test(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        found = Some(lo);
    }
    Ok(DiskProbe { disk_radius: found, radii_tested, points_tested })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeInDisk {
    pub c: f64,
    pub epsilon: f64,
    pub attempts: usize,
    pub members_tested: usize,
}

/// Searches for `(C, ε)` whose sampled cone neighborhood lies inside the
/// Euclidean disk of radius `disk_radius` around `q`. `Ok(None)` is
/// inconclusive.
pub fn probe_cone_inside_disk(dom: &Domain, p: Point, q: Point, disk_radius: f64, cfg: &ProbeConfig) -> Result<Option<ConeInDisk>> {
    if !(disk_radius > 0.0) {
        return Err(GeoError::InvalidParameter(format!("disk radius {disk_radius} must be positive")));
    }
    let ray = dom.geodesic(p, q)?;
    let len = ray.total_length();
    if len == 0.0 {
        return Err(GeoError::InvalidParameter("basepoint coincides with the target".into()));
    }
    // put γ(C) within disk_radius / 2 of q
    let c = len - 0.5 * disk_radius.min(len);
    let center = ray.at(c);
    let mut epsilon = 0.5 * (disk_radius - center.dist(q));

    let mut candidates = polar_samples(dom, q, 2.0 * disk_radius, cfg);
    candidates.extend(polar_samples(dom, center, 2.0 * epsilon, cfg));
    let sampler = UniformSampler::new(dom);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    candidates.extend((0..cfg.domain_samples).map(|_| sampler.interior_point(dom, &mut rng)));
    // geodesics from p do not change between attempts
    let mut paths = Vec::with_capacity(candidates.len());
    for &x in &candidates {
        let g = dom.geodesic(p, x)?;
        if g.total_length() > c {
            paths.push((x, g));
        }
    }

    for attempt in 1..=cfg.max_halvings {
        let members: Vec<Point> = paths.iter().filter(|(_, g)| g.distance_to_point(center) <= epsilon).map(|(x, _)| *x).collect();
        if members.iter().all(|x| x.dist(q) <= disk_radius) {
            return Ok(Some(ConeInDisk { c, epsilon, attempts: attempt, members_tested: members.len() }));
        }
        epsilon *= 0.5;
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceReport {
    pub target: Point,
    pub onset1: f64,
    pub onset2: f64,
    pub shared_length: f64,
    /// `4D` of the level.
    pub bound_4d: f64,
    /// Intrinsic distance between the two origins.
    pub allowance: f64,
    pub ok: bool,
}

/// How the target vertex is chosen at each level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetRule {
    /// Koch: the nested-sub-edge vertex; square family: the corner `(1, 1)`.
    DeepVertexRule,
    /// The vertex intrinsically farthest from the basepoint.
    FarthestVertex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyManifest {
    pub generator: String,
    pub levels: u32,
    pub basepoint: [f64; 2],
    pub target_path: TargetRule,
}

impl FamilyManifest {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GeoError::InvalidParameter(format!("family manifest: {e}")))
    }
}

#[derive(Debug, Clone)]
pub struct RefinementFamily {
    pub generator: String,
    pub levels: Vec<Domain>,
    pub basepoint: Point,
    pub targets: Vec<usize>,
}

impl RefinementFamily {
    pub fn from_manifest(m: &FamilyManifest) -> Result<Self> {
        let kind_at = |level: u32| -> Result<PolygonKind> {
            match m.generator.as_str() {
                "koch_prefix" => Ok(PolygonKind::KochPrefix { level }),
                "square" | "subdivided_square" => Ok(PolygonKind::SubdividedSquare { level }),
                other => Err(GeoError::InvalidParameter(format!("unknown family generator {other:?}"))),
            }
        };
        let basepoint = Point::new(m.basepoint[0], m.basepoint[1]);
        let mut levels = Vec::new();
        let mut targets = Vec::new();
        for level in 0..=m.levels {
            let dom = Domain::generated(&kind_at(level)?)?;
            if !dom.polygon.contains_open(basepoint) {
                return Err(GeoError::InvalidParameter(format!("basepoint {basepoint:?} is not interior at level {level}")));
            }
            let target = match (m.target_path, m.generator.as_str()) {
                (TargetRule::DeepVertexRule, "koch_prefix") => koch_deep_vertex_index(level),
                (TargetRule::DeepVertexRule, _) => dom
                    .polygon
                    .vertex_index_near(Point::new(1.0, 1.0), dom.eps())
                    .ok_or_else(|| GeoError::Internal("square family lost its corner".into()))?,
                (TargetRule::FarthestVertex, _) => farthest_vertex(&dom, basepoint)?,
            };
            levels.push(dom);
            targets.push(target);
        }
        Ok(RefinementFamily { generator: m.generator.clone(), levels, basepoint, targets })
    }

    pub fn level(&self, k: usize) -> Result<&Domain> {
        self.levels.get(k).ok_or_else(|| GeoError::InvalidParameter(format!("level {k} not in family (0..={})", self.levels.len() - 1)))
    }

    pub fn target(&self, k: usize) -> Result<Point> {
        Ok(self.level(k)?.polygon.vertex(self.targets[k]))
    }

    /// Euclidean steps between consecutive tracked targets.
    pub fn target_steps(&self) -> Vec<f64> {
        let pts: Vec<Point> = (0..self.levels.len()).map(|k| self.levels[k].polygon.vertex(self.targets[k])).collect();
        pts.windows(2).map(|w| w[0].dist(w[1])).collect()
    }

    /// Intrinsic distance from the basepoint to the target, per level.
    pub fn distance_growth(&self) -> Result<Vec<f64>> {
        (0..self.levels.len()).map(|k| self.levels[k].distance(self.basepoint, self.target(k)?)).collect()
    }
}

fn farthest_vertex(dom: &Domain, p: Point) -> Result<usize> {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, &v) in dom.polygon.vertices().iter().enumerate() {
        let d = dom.distance(p, v)?;
        if d > best.1 {
            best = (i, d);
        }
    }
    Ok(best.0)
}

/// Rays from `p1` and `p2` to the level's target share a tail that starts
/// within `4D` plus `d(p1, p2)` of each origin.
pub fn ray_family_coincidence(family: &RefinementFamily, p1: Point, p2: Point, level: usize) -> Result<CoincidenceReport> {
    let dom = family.level(level)?;
    let q = family.target(level)?;
    let st = shared_tail(dom, p1, p2, q)?;
    let bound_4d = 4.0 * dom.diameter();
    let allowance = dom.distance(p1, p2)?;
    let tol = COINCIDENCE_REL * dom.diameter();
    let ok = st.onset_p <= bound_4d + allowance + tol && st.onset_q <= bound_4d + allowance + tol;
    Ok(CoincidenceReport {
        target: q,
        onset1: st.onset_p,
        onset2: st.onset_q,
        shared_length: st.tail_length,
        bound_4d,
        allowance,
        ok,
    })
}
