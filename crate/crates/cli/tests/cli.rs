use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_jordan-geo"));
    c.env_remove("JORDAN_GEO_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn fixture(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const L_SHAPE: &str = r#"{"vertices": [[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]]}"#;

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let square = fixture(&dir, "square.json", r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#);
    let o = run(&["validate", s(&square)]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["metrics"]["diameter"].as_f64().unwrap(), 2f64.sqrt());
    assert_eq!(r["metrics"]["vertices"], 4);

    let bowtie = fixture(&dir, "bowtie.json", r#"{"vertices": [[0,0],[1,1],[1,0],[0,1]]}"#);
    let o = run(&["validate", s(&bowtie)]);
    assert_eq!(code(&o), 3);
    assert!(json(&o)["witness"]["edge_a"].is_u64());

    let truncated = fixture(&dir, "trunc.json", r#"{"vertices": [[0,0],[1,0"#);
    assert_eq!(code(&run(&["validate", s(&truncated)])), 2);
    assert_eq!(code(&run(&["validate", "/nonexistent/poly.json"])), 2);
    assert_eq!(code(&run(&["validate", "gen:nope"])), 2);
    assert_eq!(code(&run(&["validate", "gen:spiral:3"])), 0);
}

#[test]
fn geodesic_command() {
    let dir = TempDir::new().unwrap();
    let l = fixture(&dir, "l.json", L_SHAPE);
    let svg = dir.path().join("g.svg");
    let o = run(&["geodesic", s(&l), "--p", "1.5,0.5", "--q", "0.5,1.5", "--svg", s(&svg)]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert!((r["metrics"]["length"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(r["metrics"]["vertices"][1], serde_json::json!([1.0, 1.0]));
    assert!(fs::read_to_string(&svg).unwrap().contains("class=\"geodesic\""));

    let o = run(&["geodesic", "gen:square", "--p", "0.1,0.1", "--q", "0.9,0.9"]);
    assert!((json(&o)["metrics"]["length"].as_f64().unwrap() - 0.8 * 2f64.sqrt()).abs() < 1e-12);

    assert_eq!(code(&run(&["geodesic", s(&l), "--p", "1.5,1.5", "--q", "0.5,0.5"])), 4);
    assert_eq!(code(&run(&["geodesic", s(&l), "--p", "1.5", "--q", "0.5,0.5"])), 2);
}

#[test]
fn certify_delta_equilateral() {
    let o = run(&["certify", "gen:equilateral:1", "--suite", "delta", "--triangles", "5", "--delta-points-per-side", "64"]);
    assert_eq!(code(&o), 0);
    let delta = &json(&o)["checks"][0]["metrics"]["delta_lower"];
    let d = delta.as_f64().unwrap();
    assert!((0.42..=0.4330128).contains(&d), "{d}");
}

#[test]
fn certify_square_all() {
    let o = run(&["certify", "gen:square", "--suite", "all", "--triangles", "50", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json(&o)["ok"], true);
}

#[test]
fn certify_corruption_fails() {
    let o = run(&["certify", "gen:l_shape", "--suite", "separation", "--triangles", "3", "--inject-corrupt-path"]);
    assert_eq!(code(&o), 5);
    let r = json(&o);
    assert_eq!(r["ok"], false);
    assert!(!r["checks"][0]["witness"].is_null());
}

#[test]
fn certify_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = run(&["certify", "gen:comb:3", "--triangles", "4", "--seed", "9", "--json", s(out)]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let via_env = bin().args(["certify", "gen:comb:3", "--triangles", "4"]).env("JORDAN_GEO_SEED", "9").output().unwrap();
    assert_eq!(via_env.stdout, fs::read(&a).unwrap());
    let other = run(&["certify", "gen:comb:3", "--triangles", "4", "--seed", "10"]);
    assert_ne!(other.stdout, fs::read(&a).unwrap());
}

#[test]
fn cone_probes() {
    let dir = TempDir::new().unwrap();
    let square = fixture(&dir, "sq.json", r#"{"generator": "square", "levels": 1, "basepoint": [0.5, 0.5], "target_path": "deep-vertex-rule"}"#);
    let o = run(&["cone", s(&square), "--probe", "disk_in_cone", "--c", "0.3", "--epsilon", "0.1"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["metrics"]["disk_radius"].as_f64().unwrap() > 0.0);

    let koch = fixture(&dir, "koch.json", r#"{"generator": "koch_prefix", "levels": 4, "basepoint": [0.5, 0.29], "target_path": "deep-vertex-rule"}"#);
    let svg = dir.path().join("cone.svg");
    let o = run(&["cone", s(&koch), "--level", "4", "--probe", "cone_in_disk", "--svg", s(&svg)]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert!(r["metrics"]["epsilon"].as_f64().unwrap() > 0.0);
    assert_eq!(r["metrics"]["inconclusive"], false);
    assert!(fs::read_to_string(&svg).unwrap().contains("cone-ball"));

    let o = run(&["cone", s(&koch), "--level", "3", "--probe", "coincidence", "--p2", "0.4,0.2"]);
    assert_eq!(code(&o), 0);

    let outside = fixture(&dir, "bad.json", r#"{"generator": "koch_prefix", "levels": 2, "basepoint": [3, 3], "target_path": "deep-vertex-rule"}"#);
    assert_eq!(code(&run(&["cone", s(&outside), "--probe", "disk_in_cone"])), 2);
    assert_eq!(code(&run(&["cone", s(&square), "--level", "5", "--probe", "disk_in_cone"])), 2);
    let garbled = fixture(&dir, "garbled.json", r#"{"generator": "koch_prefix", "levels": "x"}"#);
    assert_eq!(code(&run(&["cone", s(&garbled), "--probe", "cone_in_disk"])), 2);
}

#[test]
fn svg_golden_l_shape_triangle() {
    let dir = TempDir::new().unwrap();
    let l = fixture(&dir, "l.json", L_SHAPE);
    let o = run(&["svg", s(&l), "--scene", r#"{"triangles": [[[1.9, 0.1], [0.5, 1.9], [0.1, 1.9]]]}"#]);
    assert_eq!(code(&o), 0);
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/l_shape_triangle.svg");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&golden, &o.stdout).unwrap();
    }
    assert_eq!(String::from_utf8(o.stdout).unwrap(), fs::read_to_string(golden).unwrap());
}

#[test]
fn svg_scenes() {
    let dir = TempDir::new().unwrap();
    let l = fixture(&dir, "l.json", L_SHAPE);
    let out = dir.path().join("empty.svg");
    assert_eq!(code(&run(&["svg", s(&l), "-o", s(&out)])), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.matches("<polygon").count(), 1);
    assert!(!text.contains("<polyline"));

    assert_eq!(code(&run(&["svg", s(&l), "--scene", r#"{"triangles": 3}"#])), 2);
    assert_eq!(code(&run(&["svg", s(&l), "--scene", "/nonexistent/scene.json"])), 2);
}
