//! Brute-force geodesic engine used to cross-check the funnel algorithm.
//!
//! Deliberately simple and slow: O(n^3) visibility graph construction and a
//! plain Dijkstra search.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{GeoError, Result};
use crate::geodesic::{canonicalize, GeodesicPath};
use crate::geom::Point;
use crate::polygon::SimplePolygon;

#[derive(Debug, Clone)]
pub struct VisibilityGraph {
    polygon: SimplePolygon,
    nodes: Vec<Point>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

/// Builds the visibility graph on polygon vertices plus `extra_points`.
///
/// Segments grazing a reflex vertex or running along an edge are visible.
pub fn build_visibility(poly: &SimplePolygon, extra_points: &[Point]) -> Result<VisibilityGraph> {
    let mut nodes = poly.vertices().to_vec();
    for &p in extra_points {
        nodes.push(poly.snap(p)?);
    }
    let m = nodes.len();
    let mut adjacency = vec![Vec::new(); m];
    for i in 0..m {
        for j in (i + 1)..m {
            if poly.segment_inside_closed(nodes[i], nodes[j]) {
                let w = nodes[i].dist(nodes[j]);
                adjacency[i].push((j, w));
                adjacency[j].push((i, w));
            }
        }
    }
    Ok(VisibilityGraph { polygon: poly.clone(), nodes, adjacency })
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl VisibilityGraph {
    /// Copy of this graph with `extra` appended as query nodes.
    pub fn with_extra_points(&self, extra: &[Point]) -> Result<VisibilityGraph> {
        let mut g = self.clone();
        for &p in extra {
            let p = g.polygon.snap(p)?;
            let k = g.nodes.len();
            g.nodes.push(p);
            g.adjacency.push(Vec::new());
            for i in 0..k {
                if g.polygon.segment_inside_closed(g.nodes[i], p) {
                    let w = g.nodes[i].dist(p);
                    g.adjacency[i].push((k, w));
                    g.adjacency[k].push((i, w));
                }
            }
        }
        Ok(g)
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].iter().any(|&(k, _)| k == j)
    }

    pub fn node_index(&self, p: Point) -> Option<usize> {
        // query points are appended after the polygon vertices; prefer them
        self.nodes.iter().rposition(|&n| n == p).or_else(|| {
            let q = self.polygon.snap(p).ok()?;
            self.nodes.iter().rposition(|&n| n == q)
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.nodes.len()).all(|i| self.adjacency[i].iter().all(|&(j, _)| self.are_adjacent(j, i)))
    }
}

/// Dijkstra over the visibility graph. `p` and `q` must be graph nodes.
pub fn oracle_shortest_path(g: &VisibilityGraph, p: Point, q: Point) -> Result<GeodesicPath> {
    let s = g.node_index(p).ok_or(GeoError::PointOutsideDomain { x: p.x, y: p.y })?;
    let t = g.node_index(q).ok_or(GeoError::PointOutsideDomain { x: q.x, y: q.y })?;
    if g.nodes[s] == g.nodes[t] {
        return Ok(GeodesicPath::point(g.nodes[s]));
    }
    let tie = 1e-12 * g.polygon.diameter();
    let m = g.nodes.len();
    let mut dist = vec![f64::INFINITY; m];
    let mut pred = vec![usize::MAX; m];
    let mut done = vec![false; m];
    let mut heap = BinaryHeap::new();
    dist[s] = 0.0;
    heap.push(Reverse((Dist(0.0), s)));
    while let Some(Reverse((Dist(d), u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == t {
            break;
        }
        for &(v, w) in &g.adjacency[u] {
            if done[v] {
                continue;
            }
            let nd = d + w;
            let better = nd < dist[v] - tie
                || (nd <= dist[v] + tie && pred[v] != usize::MAX && g.nodes[u].lex_cmp(&g.nodes[pred[v]]) == Ordering::Less);
            if better {
                dist[v] = dist[v].min(nd);
                pred[v] = u;
                heap.push(Reverse((Dist(nd), v)));
            }
        }
    }
    if !dist[t].is_finite() {
        return Err(GeoError::Internal("visibility graph is disconnected".into()));
    }
    let mut chain = vec![g.nodes[t]];
    let mut cur = t;
    while cur != s {
        cur = pred[cur];
        chain.push(g.nodes[cur]);
    }
    chain.reverse();
    Ok(canonicalize(&g.polygon, chain))
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
    fn convex_polygon_complete_graph() {
        let d = Domain::generated(&PolygonKind::Square).unwrap();
        let g = build_visibility(&d.polygon, &[]).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.is_symmetric());
    }

    #[test]
    fn l_shape_adjacency() {
        let d = Domain::generated(&PolygonKind::LShape).unwrap();
        let g = build_visibility(&d.polygon, &[]).unwrap();
        let idx = |p: Point| g.node_index(p).unwrap();
        assert!(g.are_adjacent(idx(pt(2., 0.)), idx(pt(1., 1.))));
        // grazing the reflex corner counts as visible
        assert!(g.are_adjacent(idx(pt(2., 0.)), idx(pt(0., 2.))));
        assert!(!g.are_adjacent(idx(pt(2., 1.)), idx(pt(1., 2.))));
        assert!(g.is_symmetric());
    }

    #[test]
    fn oracle_paths() {
        let sq = Domain::generated(&PolygonKind::Square).unwrap();
        let g = build_visibility(&sq.polygon, &[pt(0.1, 0.1), pt(0.9, 0.9)]).unwrap();
        let path = oracle_shortest_path(&g, pt(0.1, 0.1), pt(0.9, 0.9)).unwrap();
        assert!((path.total_length() - 0.8 * 2f64.sqrt()).abs() < 1e-12);

        let l = Domain::generated(&PolygonKind::LShape).unwrap();
        let g = build_visibility(&l.polygon, &[pt(1.5, 0.5), pt(0.5, 1.5)]).unwrap();
        let path = oracle_shortest_path(&g, pt(1.5, 0.5), pt(0.5, 1.5)).unwrap();
        assert_eq!(path.points(), &[pt(1.5, 0.5), pt(1., 1.), pt(0.5, 1.5)]);
        assert!((path.total_length() - 2f64.sqrt()).abs() < 1e-12);

        let z = oracle_shortest_path(&g, pt(1.5, 0.5), pt(1.5, 0.5)).unwrap();
        assert_eq!(z.total_length(), 0.0);
    }

    #[test]
    fn outside_extra_point_rejected() {
        let l = Domain::generated(&PolygonKind::LShape).unwrap();
        assert!(matches!(build_visibility(&l.polygon, &[pt(1.5, 1.5)]), Err(GeoError::PointOutsideDomain { .. })));
    }

    #[test]
    fn extending_matches_direct_build() {
        let l = Domain::generated(&PolygonKind::Comb { teeth: 3 }).unwrap();
        let extra = [pt(0.5, 3.5), pt(4.5, 0.5)];
        let a = build_visibility(&l.polygon, &extra).unwrap();
        let b = build_visibility(&l.polygon, &[]).unwrap().with_extra_points(&extra).unwrap();
        assert_eq!(a.edge_count(), b.edge_count());
        let pa = oracle_shortest_path(&a, extra[0], extra[1]).unwrap();
        let pb = oracle_shortest_path(&b, extra[0], extra[1]).unwrap();
        assert_eq!(pa, pb);
    }
}
