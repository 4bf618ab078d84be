//! WebAssembly bindings for the static page in `www/`.
//!
//! A domain is either a generator spec such as `spiral:3` or polygon JSON
//! `{"vertices": [[x, y], ...]}`. Every export returns a string (SVG or a
//! JSON report) and throws a JS string on error.

use jordan_geo::cat0::{decompose_triangle, estimate_delta, DeltaConfig};
use jordan_geo::polygon::{validate, PolygonFile};
use jordan_geo::report::{inputs_digest, Report};
use jordan_geo::svg::SvgCanvas;
use jordan_geo::{Domain, GeoError, Point, PolygonKind};
use wasm_bindgen::prelude::*;

fn load(spec: &str) -> Result<Domain, GeoError> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        let file = PolygonFile::from_json(spec).map_err(|e| GeoError::InvalidParameter(format!("polygon JSON: {e}")))?;
        return Ok(Domain::new(validate(&file.points())?));
    }
    Domain::generated(&spec.parse::<PolygonKind>()?)
}

fn js(e: GeoError) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Domain outline alone, for picking points before anything is computed.
pub fn domain_svg_inner(spec: &str) -> Result<String, GeoError> {
    Ok(SvgCanvas::new(&load(spec)?).finish())
}

pub fn geodesic_svg_inner(spec: &str, p: Point, q: Point) -> Result<String, GeoError> {
    let dom = load(spec)?;
    let g = dom.geodesic(p, q)?;
    let mut c = SvgCanvas::new(&dom);
    c.geodesic(&g);
    Ok(c.finish())
}

pub fn triangle_svg_inner(spec: &str, p: Point, q: Point, r: Point) -> Result<String, GeoError> {
    let dom = load(spec)?;
    let t = decompose_triangle(&dom, p, q, r)?;
    let mut c = SvgCanvas::new(&dom);
    c.triangle(&t);
    Ok(c.finish())
}

pub fn delta_report_inner(spec: &str, triangles: usize, seed: u64) -> Result<String, GeoError> {
    let dom = load(spec)?;
    let config = DeltaConfig { triangles, seed, ..DeltaConfig::default() };
    let est = estimate_delta(&dom, &config)?;
    let digest = inputs_digest(dom.polygon.vertices(), &format!("delta;triangles={triangles};seed={seed}"));
    let report = Report::new("delta", digest)
        .metric("diameter", dom.diameter())
        .metric("delta_lower", est.delta_lower)
        .metric("bound", est.bound)
        .metric("triangles", est.triangles)
        .metric("samples", est.samples)
        .with_ok(est.ok)
        .with_witness(&est.witness);
    Ok(report.to_json())
}

#[wasm_bindgen]
pub fn domain_svg(spec: &str) -> Result<String, JsValue> {
    domain_svg_inner(spec).map_err(js)
}

#[wasm_bindgen]
pub fn geodesic_svg(spec: &str, px: f64, py: f64, qx: f64, qy: f64) -> Result<String, JsValue> {
    geodesic_svg_inner(spec, Point::new(px, py), Point::new(qx, qy)).map_err(js)
}

#[wasm_bindgen]
pub fn geodesic_length(spec: &str, px: f64, py: f64, qx: f64, qy: f64) -> Result<f64, JsValue> {
    load(spec).and_then(|d| d.distance(Point::new(px, py), Point::new(qx, qy))).map_err(js)
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn triangle_svg(spec: &str, px: f64, py: f64, qx: f64, qy: f64, rx: f64, ry: f64) -> Result<String, JsValue> {
    triangle_svg_inner(spec, Point::new(px, py), Point::new(qx, qy), Point::new(rx, ry)).map_err(js)
}

#[wasm_bindgen]
pub fn delta_report(spec: &str, triangles: usize, seed: u64) -> Result<String, JsValue> {
    delta_report_inner(spec, triangles, seed).map_err(js)
}
