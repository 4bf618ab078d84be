//! Seeded point sampling over a domain.

use rand::Rng;

use crate::domain::Domain;
use crate::geom::Point;

/// Area-weighted sampler over the triangulation: uniform in the domain.
#[derive(Debug, Clone)]
pub struct UniformSampler {
    cumulative: Vec<f64>,
}

impl UniformSampler {
    pub fn new(dom: &Domain) -> Self {
        let mut acc = 0.0;
        let cumulative = (0..dom.triangulation.len())
            .map(|t| {
                acc += dom.triangulation.area(&dom.polygon, t);
                acc
            })
            .collect();
        UniformSampler { cumulative }
    }

    pub fn interior_point<R: Rng>(&self, dom: &Domain, rng: &mut R) -> Point {
        let total = *self.cumulative.last().unwrap();
        loop {
            let u = rng.gen_range(0.0..total);
            let t = self.cumulative.partition_point(|&c| c <= u).min(self.cumulative.len() - 1);
            let [a, b, c] = dom.triangulation.corners(&dom.polygon, t);
            let (mut r1, mut r2): (f64, f64) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            if r1 + r2 > 1.0 {
                r1 = 1.0 - r1;
                r2 = 1.0 - r2;
            }
            let p = a + (b - a) * r1 + (c - a) * r2;
            if dom.polygon.contains_open(p) {
                return p;
            }
        }
    }

    /// Uniform point on the boundary by arclength.
    pub fn boundary_point<R: Rng>(&self, dom: &Domain, rng: &mut R) -> Point {
        let perim: f64 = dom.polygon.edges().map(|e| e.length()).sum();
        let mut u = rng.gen_range(0.0..perim);
        for e in dom.polygon.edges() {
            let l = e.length();
            if u <= l {
                return e.a.lerp(e.b, u / l);
            }
            u -= l;
        }
        dom.polygon.vertex(0)
    }

    /// Mixture used for triangle sampling: mostly interior points, with
    /// polygon vertices and boundary points (both in the finite-distance set).
    pub fn mixed_point<R: Rng>(&self, dom: &Domain, rng: &mut R) -> Point {
        let roll: f64 = rng.gen_range(0.0..1.0);
        if roll < 0.7 {
            self.interior_point(dom, rng)
        } else if roll < 0.85 {
            dom.polygon.vertex(rng.gen_range(0..dom.polygon.len()))
        } else {
            self.boundary_point(dom, rng)
        }
    }
}
