//! Acceptance gate: every criterion at its stated tolerance, one line each.

use std::process::ExitCode;
use std::time::Instant;

use jordan_geo::asymptotics::{
    cone_membership, probe_cone_inside_disk, probe_disk_inside_cone, shared_tail, ConeNeighborhood, FamilyManifest,
    ProbeConfig, RefinementFamily, TargetRule,
};
use jordan_geo::cat0::{
    check_distance_convexity, check_perimeter_bound, check_side_convexity, check_thinness, decompose_triangle,
    estimate_delta, DeltaConfig, JordanTriangle, METRIC_TOL_REL,
};
use jordan_geo::certify::{certify, random_triangles, CertifyConfig, Suite};
use jordan_geo::geodesic::{check_separation, find_separating_chord, sample_chords, validate_taut, GeodesicPath};
use jordan_geo::oracle::{build_visibility, oracle_shortest_path};
use jordan_geo::sampling::UniformSampler;
use jordan_geo::{Domain, Point, PolygonKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn dom(kind: PolygonKind) -> Domain {
    Domain::generated(&kind).unwrap()
}

fn gallery() -> Vec<PolygonKind> {
    vec![
        PolygonKind::Square,
        PolygonKind::LShape,
        PolygonKind::Comb { teeth: 4 },
        PolygonKind::Spiral { turns: 3 },
        PolygonKind::KochPrefix { level: 3 },
        PolygonKind::RandomSimple { n: 40, seed: 5 },
    ]
}

/// Oracle-equivalence instances: (domain, sample count).
fn oracle_plan() -> Vec<(PolygonKind, usize)> {
    let mut plan = vec![
        (PolygonKind::Square, 70),
        (PolygonKind::LShape, 70),
        (PolygonKind::Comb { teeth: 4 }, 70),
        (PolygonKind::Spiral { turns: 3 }, 70),
        (PolygonKind::KochPrefix { level: 3 }, 70),
    ];
    for (i, n) in (20..=60).step_by(5).enumerate() {
        plan.push((PolygonKind::RandomSimple { n, seed: 100 + i as u64 }, if i < 6 { 17 } else { 16 }));
    }
    plan
}

fn c1_oracle_equivalence(geodesics: &mut Vec<(Domain, GeodesicPath)>) -> Outcome {
    let start = Instant::now();
    let mut instances = 0;
    let mut max_rel = 0.0f64;
    for (k, (kind, count)) in oracle_plan().into_iter().enumerate() {
        let d = dom(kind.clone());
        let sampler = UniformSampler::new(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
        let base = build_visibility(&d.polygon, &[]).unwrap();
        for _ in 0..count {
            let p = sampler.mixed_point(&d, &mut rng);
            let q = sampler.mixed_point(&d, &mut rng);
            let funnel = d.geodesic(p, q).unwrap();
            let oracle = oracle_shortest_path(&base.with_extra_points(&[p, q]).unwrap(), p, q).unwrap();
            let (a, b) = (funnel.total_length(), oracle.total_length());
            let rel = if b > 0.0 { (a - b).abs() / b } else { a };
            max_rel = max_rel.max(rel);
            if rel > 1e-9 {
                return Err(format!("{kind}: {p:?} -> {q:?}: funnel {a} vs oracle {b}"));
            }
            if funnel.points() != oracle.points() {
                return Err(format!("{kind}: {p:?} -> {q:?}: vertex sequences differ"));
            }
            instances += 1;
            if geodesics.len() < 300 && instances % 2 == 0 {
                geodesics.push((d.clone(), funnel));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if instances != 500 {
        return Err(format!("ran {instances} instances, expected 500"));
    }
    if secs >= 60.0 {
        return Err(format!("runtime {secs:.1}s exceeds 60s"));
    }
    Ok(format!("{instances} instances, max relative length gap {max_rel:.2e}, identical vertex sequences, {secs:.2}s"))
}

struct TriangleSet {
    triangles: Vec<(usize, JordanTriangle)>,
    domains: Vec<Domain>,
}

fn triangle_set() -> TriangleSet {
    let domains: Vec<Domain> = gallery().into_iter().map(dom).collect();
    let mut triangles = Vec::new();
    for (k, d) in domains.iter().enumerate() {
        let n = if k < 2 { 34 } else { 33 };
        for c in random_triangles(d, n, 2000 + k as u64) {
            triangles.push((k, decompose_triangle(d, c[0], c[1], c[2]).unwrap()));
        }
    }
    // long-tail triangle: apex at one end of an intrinsic diameter of the
    // spiral, the other two vertices close together at the far end
    let spiral = &domains[3];
    let (a, b) = intrinsic_diameter_pair(spiral);
    let b2 = spiral.polygon.snap(b.lerp(spiral.geodesic(b, a).unwrap().points()[1], 0.05)).unwrap();
    triangles.push((3, decompose_triangle(spiral, a, b, b2).unwrap()));
    TriangleSet { triangles, domains }
}

fn intrinsic_diameter_pair(d: &Domain) -> (Point, Point) {
    let v = d.polygon.vertices();
    let mut best = (0.0, v[0], v[0]);
    for &a in v {
        for &b in v {
            let dist = d.distance(a, b).unwrap();
            if dist > best.0 {
                best = (dist, a, b);
            }
        }
    }
    (best.1, best.2)
}

fn c2_thinness(set: &TriangleSet) -> Outcome {
    let start = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    let mut count = 0;
    for (k, t) in set.triangles.iter().take(200) {
        let d = &set.domains[*k];
        let r = check_thinness(d, t, 12).unwrap();
        worst = worst.max(r.max_excess / d.diameter());
        if !r.ok {
            return Err(format!("triangle {:?}: max_excess {} > 1e-7 D ({:?})", t.vertices, r.max_excess, r.witness));
        }
        count += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 300.0 {
        return Err(format!("runtime {secs:.1}s exceeds 5 min"));
    }
    Ok(format!("{count} triangles x 12 samples/side, max excess {worst:.2e} D, {secs:.2}s"))
}

fn c3_perimeter(set: &TriangleSet) -> Outcome {
    let mut worst = 0.0f64;
    let mut longest_tail_ratio = 0.0f64;
    for (k, t) in &set.triangles {
        let d = set.domains[*k].diameter();
        let r = check_perimeter_bound(t, d);
        if !r.ok {
            return Err(format!("triangle {:?}: core perimeter {} > 4D = {}", t.vertices, r.core_perimeter, r.bound_4d));
        }
        worst = worst.max(r.core_perimeter / d);
        if *k == 3 {
            for tail in &t.tails {
                longest_tail_ratio = longest_tail_ratio.max(tail.total_length() / d);
            }
        }
    }
    if longest_tail_ratio <= 4.0 {
        return Err(format!("no spiral tail exceeded 4D (longest {longest_tail_ratio:.2} D)"));
    }
    Ok(format!(
        "{} triangles, max core perimeter {worst:.3} D <= 4 D, longest spiral tail {longest_tail_ratio:.2} D",
        set.triangles.len()
    ))
}

fn c4_hyperbolicity() -> Outcome {
    let mut kinds = gallery();
    kinds.extend([PolygonKind::Equilateral { side: 1.0 }, PolygonKind::SubdividedSquare { level: 2 }]);
    let mut worst_ratio = 0.0f64;
    for (i, kind) in kinds.iter().enumerate() {
        let d = dom(kind.clone());
        let est = estimate_delta(&d, &DeltaConfig { triangles: 8, points_per_side: 16, seed: 3000 + i as u64, include_extremal: true }).unwrap();
        if !est.ok {
            return Err(format!("{kind}: delta_lower {} > sqrt(3) D / 4 = {}", est.delta_lower, est.bound));
        }
        worst_ratio = worst_ratio.max(est.delta_lower / est.bound);
    }
    let eq = dom(PolygonKind::Equilateral { side: 1.0 });
    let est = estimate_delta(&eq, &DeltaConfig { triangles: 4, points_per_side: 64, seed: 3100, include_extremal: true }).unwrap();
    if est.delta_lower < 0.42 || !est.ok {
        return Err(format!("equilateral(1): delta_lower {} outside [0.42, {}]", est.delta_lower, est.bound));
    }
    Ok(format!(
        "{} domains within bound (max ratio {worst_ratio:.4}); equilateral(1) delta_lower {:.7} vs sqrt(3)/4 = {:.7}",
        kinds.len(),
        est.delta_lower,
        3f64.sqrt() / 4.0
    ))
}

fn c5_side_turning(set: &TriangleSet) -> Outcome {
    let (mut checked, mut max_turn, mut min_sum, mut max_angle) = (0, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (_, t) in set.triangles.iter().filter(|(_, t)| !t.degenerate) {
        let r = check_side_convexity(t).unwrap();
        if !r.ok {
            return Err(format!("triangle {:?}: {r:?}", t.vertices));
        }
        checked += 1;
        max_turn = max_turn.max(r.per_side_total_turn.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        min_sum = min_sum.min(r.turn_sum);
        max_angle = max_angle.max(r.angle_sum);
    }
    Ok(format!(
        "{checked} nondegenerate triangles: max side turn {max_turn:.2e}, min turn sum {min_sum:.4}, max angle sum {max_angle:.4}"
    ))
}

fn c6_shared_tails() -> Outcome {
    let d = dom(PolygonKind::Spiral { turns: 3 });
    let (a, b) = intrinsic_diameter_pair(&d);
    let diam = d.distance(a, b).unwrap();
    if diam <= 4.0 * d.diameter() {
        return Err(format!("spiral intrinsic diameter {diam} is not above 4D = {}", 4.0 * d.diameter()));
    }
    let sampler = UniformSampler::new(&d);
    let mut rng = ChaCha8Rng::seed_from_u64(4000);
    let bound = 4.0 * d.diameter();
    let mut accepted = 0;
    let mut min_tail = f64::INFINITY;
    let mut draws = 0;
    while accepted < 50 {
        draws += 1;
        if draws > 200_000 {
            return Err(format!("only {accepted} admissible configurations found"));
        }
        let p = sampler.interior_point(&d, &mut rng);
        let off = Point::new(rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1));
        let q = p + off;
        if !d.polygon.contains_open(q) || !d.polygon.segment_inside_closed(p, q) {
            continue;
        }
        let r = sampler.interior_point(&d, &mut rng);
        if d.distance(p, r).unwrap() + d.distance(q, r).unwrap() <= bound {
            continue;
        }
        let t = shared_tail(&d, p, q, r).unwrap();
        if t.tail_length <= 0.0 {
            return Err(format!("p={p:?} q={q:?} r={r:?}: empty shared tail"));
        }
        min_tail = min_tail.min(t.tail_length);
        accepted += 1;
    }
    Ok(format!("intrinsic diameter {:.2} D; 50 configurations, shortest shared tail {min_tail:.3}", diam / d.diameter()))
}

fn c7_distance_convexity() -> Outcome {
    let kinds = gallery();
    let mut worst = f64::NEG_INFINITY;
    for i in 0..100 {
        let d = dom(kinds[i % kinds.len()].clone());
        let sampler = UniformSampler::new(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + i as u64);
        let pts: Vec<Point> = (0..4).map(|_| sampler.mixed_point(&d, &mut rng)).collect();
        // half the pairs share a source, the configuration of asymptotic rays
        let s2 = if i % 2 == 0 { pts[0] } else { pts[2] };
        let g1 = d.geodesic(pts[0], pts[1]).unwrap();
        let g2 = d.geodesic(s2, pts[3]).unwrap();
        let r = check_distance_convexity(&d, &g1, &g2, 33).unwrap();
        if !r.ok {
            return Err(format!("{}: pair {i}: violation {}", kinds[i % kinds.len()], r.max_violation));
        }
        worst = worst.max(r.max_violation / d.diameter());
    }
    Ok(format!("100 geodesic pairs x 33 samples, max midpoint excess {worst:.2e} D (tolerance {METRIC_TOL_REL:.0e} D)"))
}

fn c8_cone_probes() -> Outcome {
    let cfg = ProbeConfig::default();
    let mut lines = Vec::new();
    let families = [
        ("square", 0usize, [0.5, 0.5], [0.3, 0.6]),
        ("koch_prefix", 4usize, [0.5, 0.29], [0.4, 0.2]),
    ];
    for (generator, max_level, base, alt) in families {
        let m = FamilyManifest { generator: generator.into(), levels: max_level as u32, basepoint: base, target_path: TargetRule::DeepVertexRule };
        let fam = RefinementFamily::from_manifest(&m).unwrap();
        for level in 0..=max_level {
            let d = fam.level(level).unwrap();
            let q = fam.target(level).unwrap();
            let mut radii = Vec::new();
            for b in [base, alt] {
                let p = Point::new(b[0], b[1]);
                let ray = d.geodesic(p, q).unwrap();
                let c = if generator == "square" && b == base { 0.3 } else { 0.5 * ray.total_length() };
                let eps = if generator == "square" { 0.1 } else { 0.1 * d.diameter() };
                let n = ConeNeighborhood::new(ray.clone(), c, eps).unwrap();
                let disk = probe_disk_inside_cone(d, &n, &cfg).unwrap();
                let Some(rho) = disk.disk_radius else {
                    return Err(format!("{generator} level {level} basepoint {b:?}: disk-in-cone inconclusive"));
                };
                let radius = 0.1 * d.diameter();
                if probe_cone_inside_disk(d, p, q, radius, &cfg).unwrap().is_none() {
                    return Err(format!("{generator} level {level} basepoint {b:?}: cone-in-disk inconclusive"));
                }
                // the ray beyond C is always a member
                if !cone_membership(d, &n, ray.at(0.5 * (c + ray.total_length()))).unwrap() {
                    return Err(format!("{generator} level {level}: ray point beyond C not a member"));
                }
                radii.push(rho);
            }
            lines.push(format!("{generator}:{level} rho {:.3}/{:.3}", radii[0], radii[1]));
        }
    }
    Ok(format!("both probes succeed from both basepoints [{}]", lines.join(", ")))
}

fn c9_separation(geodesics: &[(Domain, GeodesicPath)]) -> Outcome {
    let mut tested = 0;
    let mut points = 0;
    for (d, g) in geodesics {
        let chords = sample_chords(&d.polygon, 60);
        let r = check_separation(&d.polygon, g, &chords);
        if !r.ok {
            return Err(format!("geodesic {:?}: {:?}", g.points(), r.violations.first()));
        }
        if !validate_taut(&d.polygon, g).ok {
            return Err(format!("geodesic {:?} is not taut", g.points()));
        }
        tested += 1;
        points += r.points_tested;
    }
    let l = dom(PolygonKind::LShape);
    let x = Point::new(1.5, 0.5);
    let chord = find_separating_chord(&l.polygon, x, Point::new(0.2, 1.8), Point::new(0.2, 0.2))
        .ok_or_else(|| "L-shape witness chord not found".to_string())?;
    Ok(format!(
        "{tested} geodesics, {points} sampled points unseparated; L-shape witness chord {:?}-{:?}",
        chord.a(),
        chord.b()
    ))
}

fn c10_determinism() -> Outcome {
    let mut bytes = 0;
    for kind in [PolygonKind::Comb { teeth: 4 }, PolygonKind::Spiral { turns: 3 }, PolygonKind::LShape] {
        let d = dom(kind.clone());
        let cfg = CertifyConfig { suite: Suite::All, triangles: 5, seed: 6000, ..Default::default() };
        let a = certify(&d, &cfg).unwrap().to_json();
        let b = certify(&Domain::generated(&kind).unwrap(), &cfg).unwrap().to_json();
        if a != b {
            return Err(format!("{kind}: reports differ between identical runs"));
        }
        let c = certify(&d, &CertifyConfig { seed: 6001, ..cfg }).unwrap().to_json();
        if a == c {
            return Err(format!("{kind}: seed has no effect on the report"));
        }
        bytes += a.len();
    }
    Ok(format!("3 domains x 2 runs byte-identical ({bytes} bytes); a different seed changes the report"))
}

fn main() -> ExitCode {
    let mut geodesics = Vec::new();
    let mut failures = 0;
    let mut report = |id: &str, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id} {name}: {detail} [{secs:.2}s]"),
            Err(why) => {
                failures += 1;
                println!("FAIL {id} {name}: {why} [{secs:.2}s]");
            }
        }
    };
    report("C1", "oracle equivalence", &mut || c1_oracle_equivalence(&mut geodesics));
    let set = triangle_set();
    report("C2", "CAT(0) thinness", &mut || c2_thinness(&set));
    report("C3", "Jordan triangle perimeter <= 4D", &mut || c3_perimeter(&set));
    report("C4", "hyperbolicity <= sqrt(3) D / 4", &mut c4_hyperbolicity);
    report("C5", "side turning and angle sums", &mut || c5_side_turning(&set));
    report("C6", "shared tails", &mut c6_shared_tails);
    report("C7", "distance convexity", &mut c7_distance_convexity);
    report("C8", "cone topology probes", &mut c8_cone_probes);
    report("C9", "separation criterion", &mut || c9_separation(&geodesics));
    report("C10", "determinism", &mut c10_determinism);
    if failures == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
