use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jordan_geo::asymptotics::{
    probe_cone_inside_disk, probe_disk_inside_cone, ray_family_coincidence, ConeNeighborhood, FamilyManifest, ProbeConfig,
    RefinementFamily,
};
use jordan_geo::certify::{certify, CertifyConfig, Suite};
use jordan_geo::polygon::{validate_with, PolygonFile, ValidateOptions};
use jordan_geo::report::{inputs_digest, Report};
use jordan_geo::svg::{render_scene, SceneSpec, SvgCanvas};
use jordan_geo::{Domain, GeoError, Point, PolygonKind};
use serde_json::json;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    /// A check ran and failed; the report has already been written.
    #[error("certification failed")]
    Failed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Geo(GeoError::SimplicityViolation { .. }) => 3,
            CliError::Geo(GeoError::PointOutsideDomain { .. }) => 4,
            CliError::Geo(GeoError::Internal(_)) => 1,
            CliError::Geo(_) | CliError::Io { .. } | CliError::Input(_) => 2,
            CliError::Failed => 5,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Intrinsic geodesics and comparison-geometry certification in simple polygons.
///
/// Polygon inputs are JSON files `{"vertices": [[x, y], ...]}` or a built-in
/// generator written `gen:<kind>`, e.g. `gen:spiral:3` or `gen:koch_prefix:4`.
#[derive(Parser, Debug)]
#[command(name = "jordan-geo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a polygon and report its diameter.
    Validate {
        input: String,
        /// Keep collinear vertices instead of merging them.
        #[arg(long)]
        keep_collinear: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Shortest path between two points.
    Geodesic {
        input: String,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        p: Point,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        q: Point,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run certification suites over seeded random triangles.
    Certify {
        input: String,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 20)]
        triangles: usize,
        #[arg(long, env = "JORDAN_GEO_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        samples_per_side: usize,
        #[arg(long, default_value_t = 16)]
        delta_points_per_side: usize,
        #[arg(long, default_value_t = 33)]
        convexity_samples: usize,
        /// Harness self-test: add a non-geodesic path that must be rejected.
        #[arg(long, hide = true)]
        inject_corrupt_path: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Cone-neighborhood probes on a refinement family.
    Cone {
        manifest: PathBuf,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, value_enum)]
        probe: Probe,
        /// Defaults to half the ray length.
        #[arg(long)]
        c: Option<f64>,
        /// Defaults to 0.1 D.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Disk radius for `cone_in_disk`; defaults to 0.1 D.
        #[arg(long)]
        radius: Option<f64>,
        /// Replaces the manifest basepoint.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        basepoint: Option<Point>,
        /// Second origin for `coincidence`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        p2: Option<Point>,
        #[arg(long, env = "JORDAN_GEO_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Render a scene of geodesics, triangles and cones.
    Svg {
        input: String,
        /// Scene JSON file, or inline JSON starting with `{`.
        #[arg(long, default_value = "{}")]
        scene: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Probe {
    #[value(name = "disk_in_cone", alias = "disk-in-cone")]
    DiskInCone,
    #[value(name = "cone_in_disk", alias = "cone-in-disk")]
    ConeInDisk,
    /// Shared-tail onset of rays from the basepoint and a second origin.
    #[value(name = "coincidence")]
    Coincidence,
}

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y but got {s:?}"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("{x:?}: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("{y:?}: {e}"))?;
    Ok(Point::new(x, y))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_domain(input: &str, opts: ValidateOptions) -> Result<Domain> {
    if let Some(spec) = input.strip_prefix("gen:") {
        let kind: PolygonKind = spec.parse()?;
        return Ok(Domain::generated(&kind)?);
    }
    let text = read(Path::new(input))?;
    let file = PolygonFile::from_json(&text).map_err(|e| CliError::Input(format!("{input}: {e}")))?;
    Ok(Domain::new(validate_with(&file.points(), opts)?))
}

fn emit(report: &Report, json: Option<&Path>) -> Result<()> {
    let text = report.to_json();
    match json {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    if report.ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn cmd_validate(input: &str, keep_collinear: bool, json: Option<&Path>) -> Result<()> {
    let params = format!("validate:{keep_collinear}");
    let dom = match load_domain(input, ValidateOptions { keep_collinear }) {
        Ok(d) => d,
        Err(CliError::Geo(e @ GeoError::SimplicityViolation { edge_a, edge_b })) => {
            let report = Report::new("validate", inputs_digest(&[], &params))
                .with_ok(false)
                .with_witness(json!({ "edge_a": edge_a, "edge_b": edge_b }));
            let _ = emit(&report, json);
            return Err(e.into());
        }
        Err(e) => return Err(e),
    };
    let poly = &dom.polygon;
    let report = Report::new("validate", inputs_digest(poly.vertices(), &params))
        .metric("diameter", poly.diameter())
        .metric("vertices", poly.len())
        .metric("reflex_vertices", dom.reflex_vertices().len())
        .metric("area", poly.area());
    emit(&report, json)
}

fn cmd_geodesic(input: &str, p: Point, q: Point, svg: Option<&Path>, json: Option<&Path>) -> Result<()> {
    let dom = load_domain(input, ValidateOptions::default())?;
    let g = dom.geodesic(p, q)?;
    let params = format!("geodesic:{:?}:{:?}", [p.x, p.y], [q.x, q.y]);
    let report = Report::new("geodesic", inputs_digest(dom.polygon.vertices(), &params))
        .metric("length", g.total_length())
        .metric("vertices", g.points())
        .metric("bends", g.points().len().saturating_sub(2));
    if let Some(path) = svg {
        let mut canvas = SvgCanvas::new(&dom);
        canvas.geodesic(&g);
        write(path, &canvas.finish())?;
    }
    emit(&report, json)
}

fn cmd_certify(input: &str, cfg: CertifyConfig, json: Option<&Path>) -> Result<()> {
    let dom = load_domain(input, ValidateOptions::default())?;
    let report = certify(&dom, &cfg)?;
    emit(&report, json)
}

struct ConeArgs {
    level: usize,
    probe: Probe,
    c: Option<f64>,
    epsilon: Option<f64>,
    radius: Option<f64>,
    basepoint: Option<Point>,
    p2: Option<Point>,
    seed: u64,
}

fn cmd_cone(manifest_path: &Path, args: ConeArgs, svg: Option<&Path>, json: Option<&Path>) -> Result<()> {
    let text = read(manifest_path)?;
    let mut manifest = FamilyManifest::from_json(&text)?;
    if let Some(b) = args.basepoint {
        manifest.basepoint = [b.x, b.y];
    }
    let family = RefinementFamily::from_manifest(&manifest)?;
    let dom = family.level(args.level)?;
    let q = family.target(args.level)?;
    let p = family.basepoint;
    let d = dom.diameter();
    let cfg = ProbeConfig { seed: args.seed, ..ProbeConfig::default() };
    let params = format!(
        "cone:{}:{}:{:?}:{:?}:{:?}:{:?}:{}",
        manifest.generator, args.level, args.probe, args.c, args.epsilon, args.radius, args.seed
    );
    let base = Report::new("cone", inputs_digest(dom.polygon.vertices(), &params))
        .metric("level", args.level)
        .metric("basepoint", p)
        .metric("target", q)
        .metric("diameter", d);
    let mut canvas = svg.map(|_| SvgCanvas::new(dom));
    let report = match args.probe {
        Probe::DiskInCone => {
            let ray = dom.geodesic(p, q)?;
            let c = args.c.unwrap_or(0.5 * ray.total_length());
            let nbhd = ConeNeighborhood::new(ray, c, args.epsilon.unwrap_or(0.1 * d))?;
            let probe = probe_disk_inside_cone(dom, &nbhd, &cfg)?;
            if let (Some(canvas), Some(r)) = (canvas.as_mut(), probe.disk_radius) {
                canvas.cone(&nbhd);
                canvas.ring(q, r, "probe-disk", "#1f5fa8");
            }
            base.metric("probe", "disk_in_cone")
                .metric("c", nbhd.c)
                .metric("epsilon", nbhd.epsilon)
                .metric("disk_radius", probe.disk_radius)
                .metric("radii_tested", probe.radii_tested)
                .metric("points_tested", probe.points_tested)
                .metric("inconclusive", probe.disk_radius.is_none())
        }
        Probe::ConeInDisk => {
            let radius = args.radius.unwrap_or(0.1 * d);
            let found = probe_cone_inside_disk(dom, p, q, radius, &cfg)?;
            if let (Some(canvas), Some(w)) = (canvas.as_mut(), found.as_ref()) {
                canvas.ring(q, radius, "probe-disk", "#1f5fa8");
                canvas.cone(&ConeNeighborhood::toward(dom, p, q, w.c, w.epsilon)?);
            }
            base.metric("probe", "cone_in_disk")
                .metric("disk_radius", radius)
                .metric("c", found.as_ref().map(|w| w.c))
                .metric("epsilon", found.as_ref().map(|w| w.epsilon))
                .metric("attempts", found.as_ref().map(|w| w.attempts))
                .metric("inconclusive", found.is_none())
        }
        Probe::Coincidence => {
            let second = args.p2.ok_or_else(|| CliError::Input("coincidence needs --p2, the second origin".into()))?;
            let r = ray_family_coincidence(&family, p, second, args.level)?;
            base.metric("probe", "coincidence").metric("report", &r).with_ok(r.ok)
        }
    };
    if let (Some(path), Some(canvas)) = (svg, canvas) {
        write(path, &canvas.finish())?;
    }
    emit(&report, json)
}

fn cmd_svg(input: &str, scene: &str, out: Option<&Path>) -> Result<()> {
    let dom = load_domain(input, ValidateOptions::default())?;
    let text = if scene.trim_start().starts_with('{') { scene.to_string() } else { read(Path::new(scene))? };
    let spec = SceneSpec::from_json(&text)?;
    let svg = render_scene(&dom, &spec)?;
    match out {
        Some(path) => write(path, &svg),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { input, keep_collinear, json } => cmd_validate(&input, keep_collinear, json.as_deref()),
        Command::Geodesic { input, p, q, svg, json } => cmd_geodesic(&input, p, q, svg.as_deref(), json.as_deref()),
        Command::Certify {
            input,
            suite,
            triangles,
            seed,
            samples_per_side,
            delta_points_per_side,
            convexity_samples,
            inject_corrupt_path,
            json,
        } => {
            let cfg = CertifyConfig {
                suite,
                triangles,
                seed,
                samples_per_side,
                delta_points_per_side,
                convexity_samples,
                corrupt_path: inject_corrupt_path,
                ..CertifyConfig::default()
            };
            cmd_certify(&input, cfg, json.as_deref())
        }
        Command::Cone { manifest, level, probe, c, epsilon, radius, basepoint, p2, seed, svg, json } => {
            let args = ConeArgs { level, probe, c, epsilon, radius, basepoint, p2, seed };
            cmd_cone(&manifest, args, svg.as_deref(), json.as_deref())
        }
        Command::Svg { input, scene, out } => cmd_svg(&input, &scene, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                eprintln!("jordan-geo: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
