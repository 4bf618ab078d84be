use std::collections::{HashMap, VecDeque};

use crate::geom::{orient, Point};

use super::SimplePolygon;

/// Ear-clipping triangulation of a simple polygon.
///
/// `triangles[t]` holds CCW vertex indices; `adjacency[t][k]` is the triangle
/// across edge `(triangles[t][k], triangles[t][(k + 1) % 3])`, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
    pub adjacency: Vec<[Option<usize>; 3]>,
}

pub fn triangulate(poly: &SimplePolygon) -> Triangulation {
    let v = poly.vertices();
    let n = v.len();
    let mut prev: Vec<usize> = (0..n).map(|i| (i + n - 1) % n).collect();
    let mut next: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut triangles = Vec::with_capacity(n.saturating_sub(2));

    let convex = |prev: &[usize], next: &[usize], i: usize| orient(v[prev[i]], v[i], v[next[i]]) > 0;

    let is_ear = |prev: &[usize], next: &[usize], alive: &[bool], i: usize| -> bool {
        let (a, b, c) = (prev[i], i, next[i]);
        if orient(v[a], v[b], v[c]) <= 0 {
            return false;
        }
        let mut w = next[c];
        while w != a {
            debug_assert!(alive[w]);
            let reflexish = orient(v[prev[w]], v[w], v[next[w]]) <= 0;
            if reflexish && v[w] != v[a] && v[w] != v[b] && v[w] != v[c] {
                let p = v[w];
                if orient(v[a], v[b], p) >= 0 && orient(v[b], v[c], p) >= 0 && orient(v[c], v[a], p) >= 0 {
                    return false;
                }
            }
            w = next[w];
        }
        true
    };

    let mut cur = 0;
    while remaining > 3 {
        let mut found = None;
        let mut i = cur;
        for _ in 0..remaining {
            if is_ear(&prev, &next, &alive, i) {
                found = Some(i);
                break;
            }
            i = next[i];
        }
        // Numerical dead end: clip the first strictly convex corner.
        let ear = found.or_else(|| {
            let mut i = cur;
            for _ in 0..remaining {
                if convex(&prev, &next, i) {
                    return Some(i);
                }
                i = next[i];
            }
            None
        });
        let Some(ear) = ear else { break };
        let (a, c) = (prev[ear], next[ear]);
        triangles.push([a, ear, c]);
        next[a] = c;
        prev[c] = a;
        alive[ear] = false;
        remaining -= 1;
        cur = a;
    }
    if remaining == 3 {
        let a = cur;
        let b = next[a];
        let c = next[b];
        if orient(v[a], v[b], v[c]) > 0 {
            triangles.push([a, b, c]);
        }
    }

    let adjacency = build_adjacency(&triangles);
    Triangulation { triangles, adjacency }
}

fn build_adjacency(triangles: &[[usize; 3]]) -> Vec<[Option<usize>; 3]> {
    let mut by_edge: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut adjacency = vec![[None; 3]; triangles.len()];
    for (t, tri) in triangles.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            if let Some((t2, k2)) = by_edge.remove(&key) {
                adjacency[t][k] = Some(t2);
                adjacency[t2][k2] = Some(t);
            } else {
                by_edge.insert(key, (t, k));
            }
        }
    }
    adjacency
}

impl Triangulation {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn corners(&self, poly: &SimplePolygon, t: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[t];
        [poly.vertex(a), poly.vertex(b), poly.vertex(c)]
    }

    pub fn area(&self, poly: &SimplePolygon, t: usize) -> f64 {
        let [a, b, c] = self.corners(poly, t);
        0.5 * (b - a).cross(c - a)
    }

    /// Index of a triangle whose closed region contains `p`, allowing a
    /// slack of `tol` (absolute distance) outside each edge.
    pub fn locate(&self, poly: &SimplePolygon, p: Point, tol: f64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for t in 0..self.triangles.len() {
            let [a, b, c] = self.corners(poly, t);
            // signed distances to the three edge lines, positive inside
            let mut worst = f64::INFINITY;
            for (u, w) in [(a, b), (b, c), (c, a)] {
                let e = w - u;
                let len = e.norm();
                let sd = if len == 0.0 { 0.0 } else { e.cross(p - u) / len };
                worst = worst.min(sd);
            }
            if worst >= 0.0 {
                return Some(t);
            }
            if worst >= -tol && best.is_none_or(|(_, bw)| worst > bw) {
                best = Some((t, worst));
            }
        }
        best.map(|(t, _)| t)
    }

    /// Every triangle containing `p` up to `tol`; falls back to [`Self::locate`]
    /// with `fallback_tol` when none does.
    pub fn locate_all(&self, poly: &SimplePolygon, p: Point, tol: f64, fallback_tol: f64) -> Vec<usize> {
        let hits: Vec<usize> = (0..self.triangles.len())
            .filter(|&t| {
                let [a, b, c] = self.corners(poly, t);
                [(a, b), (b, c), (c, a)].iter().all(|&(u, w)| {
                    let e = w - u;
                    let len = e.norm();
                    len == 0.0 || e.cross(p - u) / len >= -tol
                })
            })
            .collect();
        if hits.is_empty() {
            self.locate(poly, p, fallback_tol).into_iter().collect()
        } else {
            hits
        }
    }

    /// Triangle sequence from `from` to `to` through the dual tree.
    pub fn sleeve(&self, from: usize, to: usize) -> Vec<usize> {
        self.sleeve_between(&[from], &[to])
    }

    /// Shortest dual path from any triangle of `from` to any of `to`.
    pub fn sleeve_between(&self, from: &[usize], to: &[usize]) -> Vec<usize> {
        if let Some(&t) = from.iter().find(|t| to.contains(t)) {
            return vec![t];
        }
        let mut parent = vec![usize::MAX; self.triangles.len()];
        for &f in from {
            parent[f] = f;
        }
        let mut queue: VecDeque<usize> = from.iter().copied().collect();
        let mut reached = None;
        while let Some(t) = queue.pop_front() {
            if to.contains(&t) {
                reached = Some(t);
                break;
            }
            for nb in self.adjacency[t].iter().flatten() {
                if parent[*nb] == usize::MAX {
                    parent[*nb] = t;
                    queue.push_back(*nb);
                }
            }
        }
        let Some(mut t) = reached else {
            return Vec::new();
        };
        let mut path = vec![t];
        while parent[t] != t {
            t = parent[t];
            path.push(t);
        }
        path.reverse();
        path
    }

    /// The shared edge of adjacent triangles `t` and `u`, as vertex indices
    /// `(right, left)` seen when crossing from `t` into `u`.
    pub fn portal(&self, t: usize, u: usize) -> Option<(usize, usize)> {
        let k = self.adjacency[t].iter().position(|&x| x == Some(u))?;
        let tri = self.triangles[t];
        // t is CCW, so its edge a->b has t on the left; leaving t through it,
        // a is on the right and b on the left.
        Some((tri[k], tri[(k + 1) % 3]))
    }

    /// Number of connected components and edges of the dual graph.
    pub fn dual_stats(&self) -> (usize, usize) {
        let edges = self.adjacency.iter().flatten().flatten().count() / 2;
        let mut seen = vec![false; self.triangles.len()];
        let mut comps = 0;
        for s in 0..self.triangles.len() {
            if seen[s] {
                continue;
            }
            comps += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(t) = stack.pop() {
                for nb in self.adjacency[t].iter().flatten() {
                    if !seen[*nb] {
                        seen[*nb] = true;
                        stack.push(*nb);
                    }
                }
            }
        }
        (comps, edges)
    }

    /// Dual graph is connected and acyclic.
    pub fn dual_is_tree(&self) -> bool {
        let (comps, edges) = self.dual_stats();
        comps == 1 && edges + 1 == self.triangles.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{generate, validate, PolygonKind};

    fn tri_of(kind: PolygonKind) -> (SimplePolygon, Triangulation) {
        let p = generate(&kind).unwrap();
        let t = triangulate(&p);
        (p, t)
    }

    fn check(p: &SimplePolygon, t: &Triangulation) {
        assert_eq!(t.len(), p.len() - 2);
        assert!(t.dual_is_tree());
        let sum: f64 = (0..t.len()).map(|i| t.area(p, i)).sum();
        assert!((sum - p.area()).abs() <= 1e-9 * p.area());
        assert!((0..t.len()).all(|i| t.area(p, i) > 0.0));
    }

    #[test]
    fn convex_quad() {
        let p = validate(&[Point::new(0., 0.), Point::new(2., 0.), Point::new(2., 1.), Point::new(0., 1.5)]).unwrap();
        let t = triangulate(&p);
        assert_eq!(t.len(), 2);
        check(&p, &t);
    }

    #[test]
    fn gallery() {
        for kind in [
            PolygonKind::Square,
            PolygonKind::LShape,
            PolygonKind::Equilateral { side: 1.0 },
            PolygonKind::Spiral { turns: 3 },
            PolygonKind::Comb { teeth: 4 },
            PolygonKind::KochPrefix { level: 2 },
            PolygonKind::KochPrefix { level: 4 },
            PolygonKind::RandomSimple { n: 40, seed: 7 },
        ] {
            let (p, t) = tri_of(kind);
            check(&p, &t);
        }
    }

    #[test]
    fn sleeve_and_portals() {
        let (p, t) = tri_of(PolygonKind::LShape);
        let a = t.locate(&p, Point::new(1.9, 0.1), 0.0).unwrap();
        let b = t.locate(&p, Point::new(0.1, 1.9), 0.0).unwrap();
        let s = t.sleeve(a, b);
        assert_eq!(s.first(), Some(&a));
        assert_eq!(s.last(), Some(&b));
        for w in s.windows(2) {
            let (r, l) = t.portal(w[0], w[1]).unwrap();
            assert!(r != l);
        }
    }
}
