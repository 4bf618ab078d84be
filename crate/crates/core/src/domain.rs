use crate::error::Result;
use crate::geodesic::{shortest_path, GeodesicPath};
use crate::geom::Point;
use crate::polygon::{generate, triangulate, PolygonKind, SimplePolygon, Triangulation};

/// A validated polygon together with its triangulation and reflex-vertex
/// index. Immutable; share it freely across threads.
#[derive(Debug, Clone)]
pub struct Domain {
    pub polygon: SimplePolygon,
    pub triangulation: Triangulation,
    reflex: Vec<usize>,
}

impl Domain {
    pub fn new(polygon: SimplePolygon) -> Self {
        let triangulation = triangulate(&polygon);
        let reflex = (0..polygon.len()).filter(|&i| polygon.is_reflex(i)).collect();
        Domain { polygon, triangulation, reflex }
    }

    pub fn generated(kind: &PolygonKind) -> Result<Self> {
        Ok(Domain::new(generate(kind)?))
    }

    pub fn diameter(&self) -> f64 {
        self.polygon.diameter()
    }

    pub fn eps(&self) -> f64 {
        self.polygon.boundary_eps()
    }

    pub fn reflex_vertices(&self) -> &[usize] {
        &self.reflex
    }

    pub fn geodesic(&self, p: Point, q: Point) -> Result<GeodesicPath> {
        shortest_path(&self.polygon, &self.triangulation, p, q)
    }

    pub fn distance(&self, p: Point, q: Point) -> Result<f64> {
        Ok(self.geodesic(p, q)?.total_length())
    }
}
