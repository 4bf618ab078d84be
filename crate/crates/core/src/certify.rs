//! Seeded certification suites over random triangles of one domain.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cat0::{
    check_distance_convexity, check_perimeter_bound, check_side_convexity, check_thinness, decompose_triangle,
    estimate_delta, incenter_witness, DeltaConfig, JordanTriangle,
};
use crate::domain::Domain;
use crate::error::{GeoError, Result};
use crate::geodesic::{check_separation, find_separating_chord, sample_chords, validate_taut, GeodesicPath, DEFAULT_CHORD_CAP};
use crate::geom::Point;
use crate::report::{inputs_digest, Report};
use crate::sampling::UniformSampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Thin,
    Perimeter,
    Delta,
    Convexity,
    Separation,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Thin => "thin",
            Suite::Perimeter => "perimeter",
            Suite::Delta => "delta",
            Suite::Convexity => "convexity",
            Suite::Separation => "separation",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "thin" => Suite::Thin,
            "perimeter" => Suite::Perimeter,
            "delta" => Suite::Delta,
            "convexity" => Suite::Convexity,
            "separation" => Suite::Separation,
            "all" => Suite::All,
            _ => return Err(GeoError::InvalidParameter(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub suite: Suite,
    pub triangles: usize,
    pub seed: u64,
    pub samples_per_side: usize,
    pub delta_points_per_side: usize,
    pub convexity_samples: usize,
    pub chord_cap: usize,
    /// Self-test: inject a path that is not a geodesic into the separation
    /// check, which must then fail.
    pub corrupt_path: bool,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            suite: Suite::All,
            triangles: 20,
            seed: 0,
            samples_per_side: 12,
            delta_points_per_side: 16,
            convexity_samples: 33,
            chord_cap: DEFAULT_CHORD_CAP,
            corrupt_path: false,
        }
    }
}

// independent streams so that a suite's samples do not depend on which
// other suites ran
const STREAM_TRIANGLES: u64 = 1;
const STREAM_PAIRS: u64 = 2;
const STREAM_CORRUPT: u64 = 3;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// `n` seeded triangles drawn from the interior/vertex/boundary mixture.
pub fn random_triangles(dom: &Domain, n: usize, seed: u64) -> Vec<[Point; 3]> {
    let sampler = UniformSampler::new(dom);
    let mut r = rng(seed, STREAM_TRIANGLES);
    (0..n)
        .map(|_| [sampler.mixed_point(dom, &mut r), sampler.mixed_point(dom, &mut r), sampler.mixed_point(dom, &mut r)])
        .collect()
}

pub fn certify(dom: &Domain, cfg: &CertifyConfig) -> Result<Report> {
    let params = serde_json::to_string(cfg).map_err(|e| GeoError::Internal(e.to_string()))?;
    let digest = inputs_digest(dom.polygon.vertices(), &params);
    let mut report = Report::new("certify", digest.clone())
        .metric("suite", cfg.suite)
        .metric("seed", cfg.seed)
        .metric("triangles", cfg.triangles)
        .metric("diameter", dom.diameter())
        .metric("vertices", dom.polygon.len());

    let corners = random_triangles(dom, cfg.triangles, cfg.seed);
    let needs_decomposition = [Suite::Thin, Suite::Perimeter, Suite::Convexity].iter().any(|&s| cfg.suite.includes(s));
    let mut tris = Vec::new();
    if needs_decomposition {
        for c in &corners {
            tris.push(decompose_triangle(dom, c[0], c[1], c[2])?);
        }
    }

    if cfg.suite.includes(Suite::Thin) {
        report.push(thin_suite(dom, &tris, cfg, &digest)?);
    }
    if cfg.suite.includes(Suite::Perimeter) {
        report.push(perimeter_suite(dom, &tris, &digest));
    }
    if cfg.suite.includes(Suite::Delta) {
        let est = estimate_delta(
            dom,
            &DeltaConfig { triangles: cfg.triangles, points_per_side: cfg.delta_points_per_side, seed: cfg.seed, include_extremal: true },
        )?;
        report.push(
            Report::new("delta", digest.as_str())
                .metric("delta_lower", est.delta_lower)
                .metric("bound", est.bound)
                .metric("samples", est.samples)
                .metric("triangles", est.triangles)
                .with_ok(est.ok)
                .with_witness(&est.witness),
        );
    }
    if cfg.suite.includes(Suite::Convexity) {
        report.push(side_convexity_suite(dom, &tris, &digest)?);
        report.push(distance_convexity_suite(dom, cfg, &digest)?);
    }
    if cfg.suite.includes(Suite::Separation) || cfg.corrupt_path {
        report.push(separation_suite(dom, &corners, cfg, &digest)?);
    }
    Ok(report)
}

fn thin_suite(dom: &Domain, tris: &[JordanTriangle], cfg: &CertifyConfig, digest: &str) -> Result<Report> {
    let mut worst: Option<(f64, serde_json::Value)> = None;
    let mut pairs = 0;
    let mut ok = true;
    for t in tris {
        let r = check_thinness(dom, t, cfg.samples_per_side)?;
        pairs += r.pairs;
        ok &= r.ok;
        if worst.as_ref().is_none_or(|(w, _)| r.max_excess > *w) {
            worst = Some((r.max_excess, json!({ "triangle": t.vertices, "pair": r.witness })));
        }
    }
    let (max_excess, witness) = worst.unwrap_or((0.0, serde_json::Value::Null));
    Ok(Report::new("thin", digest)
        .metric("max_excess", max_excess)
        .metric("tolerance", crate::cat0::METRIC_TOL_REL * dom.diameter())
        .metric("pairs", pairs)
        .with_ok(ok)
        .with_witness(witness))
}

fn perimeter_suite(dom: &Domain, tris: &[JordanTriangle], digest: &str) -> Report {
    let mut ok = true;
    let mut max_perimeter = 0.0f64;
    let mut max_tail = 0.0f64;
    let mut witness = serde_json::Value::Null;
    for t in tris {
        let r = check_perimeter_bound(t, dom.diameter());
        ok &= r.ok;
        if r.core_perimeter >= max_perimeter {
            max_perimeter = r.core_perimeter;
            witness = json!({ "triangle": t.vertices, "bifurcation": t.bifurcation });
        }
        for tail in &t.tails {
            max_tail = max_tail.max(tail.total_length());
        }
    }
    Report::new("perimeter", digest)
        .metric("max_core_perimeter", max_perimeter)
        .metric("bound_4d", 4.0 * dom.diameter())
        .metric("max_tail_length", max_tail)
        .metric("degenerate", tris.iter().filter(|t| t.degenerate).count())
        .with_ok(ok)
        .with_witness(witness)
}

fn side_convexity_suite(dom: &Domain, tris: &[JordanTriangle], digest: &str) -> Result<Report> {
    let mut ok = true;
    let mut max_side_turn = f64::NEG_INFINITY;
    let mut min_turn_sum = f64::INFINITY;
    let mut max_angle_sum = f64::NEG_INFINITY;
    let (mut checked, mut witnesses_found, mut witnesses_missing) = (0usize, 0usize, 0usize);
    let mut witness = serde_json::Value::Null;
    for t in tris.iter().filter(|t| !t.degenerate) {
        let r = check_side_convexity(t)?;
        checked += 1;
        for &turn in &r.per_side_total_turn {
            max_side_turn = max_side_turn.max(turn);
        }
        min_turn_sum = min_turn_sum.min(r.turn_sum);
        max_angle_sum = max_angle_sum.max(r.angle_sum);
        let mut tri_ok = r.ok;
        match incenter_witness(dom, t)? {
            Some(w) => {
                witnesses_found += 1;
                tri_ok &= w.ok;
            }
            None => witnesses_missing += 1,
        }
        if !tri_ok && ok {
            witness = json!({ "triangle": t.vertices, "report": r });
        }
        ok &= tri_ok;
    }
    Ok(Report::new("side_convexity", digest)
        .metric("nondegenerate", checked)
        .metric("max_side_turn", if checked > 0 { max_side_turn } else { 0.0 })
        .metric("min_turn_sum", if checked > 0 { min_turn_sum } else { 0.0 })
        .metric("max_angle_sum", if checked > 0 { max_angle_sum } else { 0.0 })
        .metric("incenter_found", witnesses_found)
        .metric("incenter_inconclusive", witnesses_missing)
        .with_ok(ok)
        .with_witness(witness))
}

fn distance_convexity_suite(dom: &Domain, cfg: &CertifyConfig, digest: &str) -> Result<Report> {
    let sampler = UniformSampler::new(dom);
    let mut r = rng(cfg.seed, STREAM_PAIRS);
    let mut ok = true;
    let mut max_violation = f64::NEG_INFINITY;
    let mut witness = serde_json::Value::Null;
    for _ in 0..cfg.triangles {
        let pts: Vec<Point> = (0..4).map(|_| sampler.mixed_point(dom, &mut r)).collect();
        let g1 = dom.geodesic(pts[0], pts[1])?;
        let g2 = dom.geodesic(pts[2], pts[3])?;
        let rep = check_distance_convexity(dom, &g1, &g2, cfg.convexity_samples)?;
        if rep.max_violation > max_violation {
            max_violation = rep.max_violation;
            witness = json!({ "g1": [pts[0], pts[1]], "g2": [pts[2], pts[3]] });
        }
        ok &= rep.ok;
    }
    Ok(Report::new("distance_convexity", digest)
        .metric("pairs", cfg.triangles)
        .metric("samples", cfg.convexity_samples)
        .metric("max_violation", if cfg.triangles > 0 { max_violation } else { 0.0 })
        .with_ok(ok)
        .with_witness(witness))
}

/// A path from `p` to `q` through an interior point off the geodesic.
fn corrupted_path(dom: &Domain, seed: u64) -> Result<GeodesicPath> {
    let sampler = UniformSampler::new(dom);
    let mut r = rng(seed, STREAM_CORRUPT);
    loop {
        let p = sampler.interior_point(dom, &mut r);
        let q = sampler.interior_point(dom, &mut r);
        let x = sampler.interior_point(dom, &mut r);
        let g = dom.geodesic(p, q)?;
        if g.distance_to_point(x) > 0.05 * dom.diameter() {
            return Ok(GeodesicPath::new(vec![p, x, q]));
        }
    }
}

fn separation_suite(dom: &Domain, corners: &[[Point; 3]], cfg: &CertifyConfig, digest: &str) -> Result<Report> {
    let chords = sample_chords(&dom.polygon, cfg.chord_cap);
    let mut paths = Vec::new();
    if cfg.suite.includes(Suite::Separation) {
        for c in corners {
            paths.push(dom.geodesic(c[0], c[1])?);
        }
    }
    if cfg.corrupt_path {
        paths.push(corrupted_path(dom, cfg.seed)?);
    }
    let mut ok = true;
    let mut points_tested = 0;
    let mut witness = serde_json::Value::Null;
    for path in &paths {
        let sep = check_separation(&dom.polygon, path, &chords);
        let taut = validate_taut(&dom.polygon, path);
        points_tested += sep.points_tested;
        // a bend away from a reflex corner admits a separating chord
        let pts = path.points();
        let inner = if pts.len() > 2 { &pts[1..pts.len() - 1] } else { &[] };
        let bent_witness = inner
            .iter()
            .find_map(|&x| find_separating_chord(&dom.polygon, x, path.source(), path.target()));
        let path_ok = sep.ok && taut.ok && bent_witness.is_none();
        if !path_ok && ok {
            witness = json!({
                "path": path.points(),
                "violations": sep.violations,
                "taut": taut.violations,
                "chord": bent_witness.map(|c| [c.a(), c.b()]),
            });
        }
        ok &= path_ok;
    }
    Ok(Report::new("separation", digest)
        .metric("paths", paths.len())
        .metric("chords", chords.len())
        .metric("points_tested", points_tested)
        .metric("corrupted_injected", cfg.corrupt_path)
        .with_ok(ok)
        .with_witness(witness))
}
