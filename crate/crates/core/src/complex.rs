//! Oriented two-dimensional simplicial complexes and their boundary /
//! coboundary matrices.
//!
//! Edges are stored as vertex pairs `(a, b)` with `a < b` and enumerated in
//! lexicographic order, so edge ids only depend on the triangle list. The
//! canonical direction of an edge is `a -> b`.
//!
//! Triangle `[v0, v1, v2]` has local edge `k` opposite local vertex `k`,
//! traversed as `v1 -> v2`, `v2 -> v0`, `v0 -> v1`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::CsrMatrix;
use crate::vec3::Point3;

/// A closed chain of boundary edges, walked in the orientation induced by
/// the incident triangles (the domain lies to the left).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryLoop {
    /// Vertices in walking order, starting at the lowest vertex id.
    pub vertices: Vec<usize>,
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]` (cyclically).
    pub edges: Vec<usize>,
    /// `+1` when the walk follows the canonical edge direction, `-1` otherwise.
    /// Equal to the edge's entry in the boundary matrix column of its triangle.
    pub signs: Vec<f64>,
}

impl BoundaryLoop {
    /// Sum of an edge cochain along the loop, in the induced orientation.
    /// For a flux cochain this is the net outflow through this boundary piece.
    pub fn circulation(&self, cochain: &[f64]) -> f64 {
        self.edges.iter().zip(&self.signs).map(|(&e, &s)| s * cochain[e]).sum()
    }
}

#[derive(Debug, Clone)]
pub struct SimplicialSurface {
    vertices: Vec<Point3>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<[usize; 2]>,
    edge_index: HashMap<(usize, usize), usize>,
    /// Per triangle, per local edge: (edge id, orientation sign).
    triangle_edges: Vec<[(usize, f64); 3]>,
    /// Incident triangles of each edge; boundary edges have only the first.
    edge_triangles: Vec<(usize, Option<usize>)>,
    boundary_edges: Vec<usize>,
    boundary_loops: Vec<BoundaryLoop>,
}

impl SimplicialSurface {
    /// Builds the complex, enumerating edges and checking that the triangles
    /// form an oriented manifold with boundary. Orientation is trusted from
    /// the input and never repaired.
    pub fn new(vertices: Vec<Point3>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let n_vertices = vertices.len();
        for (t, tri) in triangles.iter().enumerate() {
            for &v in tri {
                if v >= n_vertices {
                    return Err(Error::IndexOutOfRange { triangle: t, vertex: v, n_vertices });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(Error::DegenerateTriangle(t));
            }
        }

        let mut pairs: Vec<[usize; 2]> = triangles
            .iter()
            .flat_map(|&[a, b, c]| [[a, b], [b, c], [c, a]])
            .map(|[a, b]| [a.min(b), a.max(b)])
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let edges = pairs;
        let edge_index: HashMap<(usize, usize), usize> =
            edges.iter().enumerate().map(|(i, &[a, b])| ((a, b), i)).collect();

        let mut triangle_edges = Vec::with_capacity(triangles.len());
        let mut incidence: Vec<Vec<(usize, f64)>> = vec![Vec::new(); edges.len()];
        for (t, tri) in triangles.iter().enumerate() {
            let mut local = [(0usize, 0.0f64); 3];
            for (k, slot) in local.iter_mut().enumerate() {
                let from = tri[(k + 1) % 3];
                let to = tri[(k + 2) % 3];
                let e = edge_index[&(from.min(to), from.max(to))];
                let sign = if from < to { 1.0 } else { -1.0 };
                *slot = (e, sign);
                incidence[e].push((t, sign));
            }
            triangle_edges.push(local);
        }

        let mut edge_triangles = Vec::with_capacity(edges.len());
        let mut boundary_edges = Vec::new();
        for (e, inc) in incidence.iter().enumerate() {
            let [a, b] = edges[e];
            match inc.as_slice() {
                [(t, _)] => {
                    boundary_edges.push(e);
                    edge_triangles.push((*t, None));
                }
                [(t0, s0), (t1, s1)] => {
                    if s0 == s1 {
                        return Err(Error::NonOrientable(a, b));
                    }
                    edge_triangles.push((*t0, Some(*t1)));
                }
                _ => return Err(Error::NonManifold(a, b)),
            }
        }

        let mut complex = Self {
            vertices,
            triangles,
            edges,
            edge_index,
            triangle_edges,
            edge_triangles,
            boundary_edges,
            boundary_loops: Vec::new(),
        };
        complex.boundary_loops = complex.trace_boundary_loops();
        Ok(complex)
    }

    fn trace_boundary_loops(&self) -> Vec<BoundaryLoop> {
        // directed boundary edges in the induced orientation, keyed by tail vertex
        let mut outgoing: HashMap<usize, Vec<(usize, usize, f64)>> = HashMap::new();
        for &e in &self.boundary_edges {
            let (t, _) = self.edge_triangles[e];
            let sign = self.triangle_edges[t].iter().find(|(id, _)| *id == e).unwrap().1;
            let [a, b] = self.edges[e];
            let (from, to) = if sign > 0.0 { (a, b) } else { (b, a) };
            outgoing.entry(from).or_default().push((to, e, sign));
        }
        for list in outgoing.values_mut() {
            list.sort_by_key(|&(_, e, _)| std::cmp::Reverse(e));
        }

        let mut loops = Vec::new();
        let mut starts: Vec<usize> = outgoing.keys().copied().collect();
        starts.sort_unstable();
        for start in starts {
            while outgoing.get(&start).is_some_and(|l| !l.is_empty()) {
                let mut lp = BoundaryLoop { vertices: Vec::new(), edges: Vec::new(), signs: Vec::new() };
                let mut at = start;
                while let Some((to, e, sign)) = outgoing.get_mut(&at).and_then(Vec::pop) {
                    lp.vertices.push(at);
                    lp.edges.push(e);
                    lp.signs.push(sign);
                    at = to;
                    if at == start {
                        break;
                    }
                }
                loops.push(lp);
            }
        }
        // starts are visited in increasing order, so every loop begins at its
        // lowest vertex and loops are ordered by that vertex
        loops
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    /// Edge id of the (unordered) vertex pair, if it is an edge of the mesh.
    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    /// `(edge id, sign)` for the three local edges of triangle `t`; local edge
    /// `k` is opposite local vertex `k`.
    pub fn triangle_edges(&self, t: usize) -> &[(usize, f64); 3] {
        &self.triangle_edges[t]
    }

    /// The one or two triangles incident to an edge.
    pub fn edge_triangles(&self, e: usize) -> (usize, Option<usize>) {
        self.edge_triangles[e]
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.edge_triangles[e].1.is_none()
    }

    pub fn boundary_edges(&self) -> &[usize] {
        &self.boundary_edges
    }

    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.n_edges()).filter(|&e| !self.is_boundary_edge(e)).collect()
    }

    pub fn boundary_loops(&self) -> &[BoundaryLoop] {
        &self.boundary_loops
    }

    pub fn triangle_points(&self, t: usize) -> [Point3; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices() as i64 - self.n_edges() as i64 + self.n_triangles() as i64
    }

    /// Boundary matrix from triangles to edges (E x F).
    pub fn boundary_2(&self) -> CsrMatrix {
        let triplets: Vec<_> = self
            .triangle_edges
            .iter()
            .enumerate()
            .flat_map(|(t, local)| local.iter().map(move |&(e, s)| (e, t, s)))
            .collect();
        CsrMatrix::from_triplets(self.n_edges(), self.n_triangles(), &triplets)
    }

    /// Boundary matrix from edges to vertices (V x E).
    pub fn boundary_1(&self) -> CsrMatrix {
        let triplets: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(e, &[a, b])| [(a, e, -1.0), (b, e, 1.0)])
            .collect();
        CsrMatrix::from_triplets(self.n_vertices(), self.n_edges(), &triplets)
    }

    /// Exterior derivative on vertex cochains (E x V), the transpose of `boundary_1`.
    pub fn coboundary_0(&self) -> CsrMatrix {
        self.boundary_1().transpose()
    }

    /// Exterior derivative on edge cochains (F x E), the transpose of `boundary_2`.
    pub fn coboundary_1(&self) -> CsrMatrix {
        self.boundary_2().transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(points: &[(f64, f64)]) -> Vec<Point3> {
        points.iter().map(|&(x, y)| [x, y, 0.0]).collect()
    }

    fn single() -> SimplicialSurface {
        SimplicialSurface::new(flat(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]), vec![[0, 1, 2]]).unwrap()
    }

    #[test]
    fn single_triangle() {
        let sc = single();
        assert_eq!(sc.edges(), &[[0, 1], [0, 2], [1, 2]]);
        assert_eq!(sc.boundary_edges().len(), 3);
        assert_eq!(sc.boundary_loops().len(), 1);
        assert_eq!(sc.boundary_loops()[0].vertices, vec![0, 1, 2]);
        let b2 = sc.boundary_2();
        assert_eq!(b2.to_dense(), vec![vec![1.0], vec![-1.0], vec![1.0]]);
        let d1d0 = sc.coboundary_1().matmul(&sc.coboundary_0()).unwrap();
        assert_eq!((d1d0.nrows(), d1d0.ncols(), d1d0.nnz()), (1, 3, 0));
    }

    #[test]
    fn two_triangles_share_one_edge() {
        let sc = SimplicialSurface::new(
            flat(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]),
            vec![[0, 1, 2], [0, 2, 3]],
        )
        .unwrap();
        assert_eq!(sc.n_edges(), 5);
        assert_eq!(sc.interior_edges(), vec![sc.edge_id(0, 2).unwrap()]);
        assert_eq!(sc.euler_characteristic(), 1);
    }

    #[test]
    fn coboundary_0_convention() {
        let sc = single();
        let d0 = sc.coboundary_0();
        let e = sc.edge_id(1, 2).unwrap();
        assert_eq!(d0.get(e, 1), -1.0);
        assert_eq!(d0.get(e, 2), 1.0);
        assert_eq!(d0.get(e, 0), 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        let pts = flat(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (-1.0, 0.5)]);
        assert!(matches!(
            SimplicialSurface::new(pts.clone(), vec![[0, 1, 7]]),
            Err(Error::IndexOutOfRange { vertex: 7, .. })
        ));
        assert!(matches!(
            SimplicialSurface::new(pts.clone(), vec![[0, 1, 1]]),
            Err(Error::DegenerateTriangle(0))
        ));
        assert!(matches!(
            SimplicialSurface::new(pts.clone(), vec![[0, 1, 2], [0, 1, 3]]),
            Err(Error::NonOrientable(0, 1))
        ));
        assert!(matches!(
            SimplicialSurface::new(pts, vec![[0, 1, 2], [1, 0, 3], [0, 1, 4]]),
            Err(Error::NonManifold(0, 1))
        ));
    }

    #[test]
    fn loops_ordered_by_lowest_vertex() {
        // square annulus: inner square 4..8 listed after the outer square 0..4
        let pts = flat(&[
            (-2.0, -2.0), (2.0, -2.0), (2.0, 2.0), (-2.0, 2.0),
            (-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0),
        ]);
        let mut tris = Vec::new();
        for i in 0..4 {
            let j = (i + 1) % 4;
            tris.push([i, j, 4 + j]);
            tris.push([i, 4 + j, 4 + i]);
        }
        let sc = SimplicialSurface::new(pts, tris).unwrap();
        assert_eq!(sc.euler_characteristic(), 0);
        let loops = sc.boundary_loops();
        assert_eq!(loops.len(), 2);
        assert_eq!(loops[0].vertices, vec![0, 1, 2, 3]);
        // inner loop walks clockwise
        assert_eq!(loops[1].vertices, vec![4, 7, 6, 5]);
        // column sums of d1 vanish on interior edges and are the loop signs on the boundary
        let d1 = sc.coboundary_1();
        let ones = vec![1.0; sc.n_triangles()];
        let col_sums = d1.transpose().spmv(&ones).unwrap();
        for e in sc.interior_edges() {
            assert_eq!(col_sums[e], 0.0);
        }
        for lp in loops {
            for (&e, &s) in lp.edges.iter().zip(&lp.signs) {
                assert_eq!(col_sums[e], s);
            }
        }
    }
}
