//! Per-simplex metric data for the piecewise-flat surface and its
//! circumcentric dual, plus mesh quality classification.
//!
//! Circumcenters of embedded triangles are computed in each triangle's own
//! plane, so the dual is the usual piecewise-flat circumcentric dual.

use crate::complex::SimplicialSurface;
use crate::error::{Error, Result};
use crate::vec3::{self, Point3};

/// Relative area threshold below which a triangle counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-14;

/// Relative tolerance used when classifying angles and dual lengths, so that
/// right triangles and cocircular quads are not flipped by rounding.
pub const QUALITY_TOL: f64 = 1e-12;

pub fn triangle_area(p: [Point3; 3]) -> f64 {
    0.5 * vec3::norm(vec3::cross(vec3::sub(p[1], p[0]), vec3::sub(p[2], p[0])))
}

fn check_nondegenerate(p: [Point3; 3], id: usize) -> Result<()> {
    let longest = (0..3)
        .map(|k| vec3::dist(p[k], p[(k + 1) % 3]))
        .fold(0.0, f64::max);
    if !(triangle_area(p) >= DEGENERACY_TOL * longest * longest) || longest == 0.0 {
        return Err(Error::DegenerateTriangle(id));
    }
    Ok(())
}

/// Circumcenter of a triangle in R^3, lying in the triangle's plane.
pub fn circumcenter(p0: Point3, p1: Point3, p2: Point3) -> Result<Point3> {
    check_nondegenerate([p0, p1, p2], 0)?;
    let a = vec3::sub(p1, p0);
    let b = vec3::sub(p2, p0);
    let axb = vec3::cross(a, b);
    let num = vec3::cross(
        vec3::sub(vec3::scale(vec3::dot(a, a), b), vec3::scale(vec3::dot(b, b), a)),
        axb,
    );
    Ok(vec3::add(p0, vec3::scale(0.5 / vec3::dot(axb, axb), num)))
}

pub fn barycenter(p: [Point3; 3]) -> Point3 {
    vec3::combine(p, [1.0 / 3.0; 3])
}

/// Interior angles at the three vertices.
pub fn triangle_angles(p: [Point3; 3]) -> [f64; 3] {
    std::array::from_fn(|k| {
        let u = vec3::sub(p[(k + 1) % 3], p[k]);
        let v = vec3::sub(p[(k + 2) % 3], p[k]);
        vec3::norm(vec3::cross(u, v)).atan2(vec3::dot(u, v))
    })
}

/// True when every angle is strictly below a right angle.
pub fn is_acute(p: [Point3; 3]) -> bool {
    (0..3).all(|k| {
        let u = vec3::sub(p[(k + 1) % 3], p[k]);
        let v = vec3::sub(p[(k + 2) % 3], p[k]);
        vec3::dot(u, v) > QUALITY_TOL * vec3::norm(u) * vec3::norm(v)
    })
}

/// Signed distance from the circumcenter `cc` of a triangle to the midpoint
/// of its edge `a b`; positive when `cc` is on the same side of the edge as
/// the opposite vertex `opposite`.
pub fn signed_circumcenter_distance(a: Point3, b: Point3, opposite: Point3, cc: Point3) -> f64 {
    let m = vec3::midpoint(a, b);
    let dir = vec3::normalize(vec3::sub(b, a));
    let to_opp = vec3::sub(opposite, m);
    let inward = vec3::sub(to_opp, vec3::scale(vec3::dot(to_opp, dir), dir));
    vec3::dot(vec3::sub(cc, m), vec3::normalize(inward))
}

/// Metric data for every simplex of a complex.
#[derive(Debug, Clone)]
pub struct DualMetrics {
    pub edge_length: Vec<f64>,
    pub tri_area: Vec<f64>,
    pub circumcenter: Vec<Point3>,
    pub barycenter: Vec<Point3>,
    /// Unit normal of each triangle, following its vertex order.
    pub normal: Vec<Point3>,
    /// Signed circumcentric dual edge length.
    pub dual_edge_length: Vec<f64>,
    /// Locally Delaunay test (non-negative dual length up to rounding).
    /// Meaningful on interior edges; on boundary edges it reports whether the
    /// single incident triangle is non-obtuse at that edge.
    pub is_delaunay: Vec<bool>,
    pub is_well_centered: Vec<bool>,
}

impl DualMetrics {
    pub fn compute(sc: &SimplicialSurface) -> Result<Self> {
        let nt = sc.n_triangles();
        let mut tri_area = Vec::with_capacity(nt);
        let mut circumcenters = Vec::with_capacity(nt);
        let mut barycenters = Vec::with_capacity(nt);
        let mut normals = Vec::with_capacity(nt);
        let mut well_centered = Vec::with_capacity(nt);
        for t in 0..nt {
            let p = sc.triangle_points(t);
            check_nondegenerate(p, t)?;
            let n = vec3::cross(vec3::sub(p[1], p[0]), vec3::sub(p[2], p[0]));
            tri_area.push(0.5 * vec3::norm(n));
            normals.push(vec3::normalize(n));
            circumcenters.push(circumcenter(p[0], p[1], p[2]).map_err(|_| Error::DegenerateTriangle(t))?);
            barycenters.push(barycenter(p));
            well_centered.push(is_acute(p));
        }
        let edge_length: Vec<f64> = sc
            .edges()
            .iter()
            .map(|&[a, b]| vec3::dist(sc.vertices()[a], sc.vertices()[b]))
            .collect();
        let dual_edge_length = signed_dual_lengths(sc, &circumcenters);
        let is_delaunay = dual_edge_length
            .iter()
            .zip(&edge_length)
            .map(|(&d, &l)| d >= -QUALITY_TOL * l)
            .collect();
        Ok(Self {
            edge_length,
            tri_area,
            circumcenter: circumcenters,
            barycenter: barycenters,
            normal: normals,
            dual_edge_length,
            is_delaunay,
            is_well_centered: well_centered,
        })
    }

    pub fn total_area(&self) -> f64 {
        self.tri_area.iter().sum()
    }

    /// Longest edge of the mesh.
    pub fn h_max(&self) -> f64 {
        self.edge_length.iter().copied().fold(0.0, f64::max)
    }
}

/// Per-edge sum, over the incident triangles, of the signed distance from the
/// triangle's circumcenter to the edge midpoint.
pub fn signed_dual_lengths(sc: &SimplicialSurface, circumcenters: &[Point3]) -> Vec<f64> {
    let mut dual = vec![0.0; sc.n_edges()];
    for (t, tri) in sc.triangles().iter().enumerate() {
        let p = sc.triangle_points(t);
        for (k, &(e, _)) in sc.triangle_edges(t).iter().enumerate() {
            debug_assert!(sc.edges()[e].contains(&tri[(k + 1) % 3]));
            dual[e] += signed_circumcenter_distance(p[(k + 1) % 3], p[(k + 2) % 3], p[k], circumcenters[t]);
        }
    }
    dual
}

#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport {
    /// Every interior edge is locally Delaunay.
    pub delaunay: bool,
    /// Every triangle is acute.
    pub well_centered: bool,
    pub min_angle: f64,
    pub max_angle: f64,
    pub non_delaunay_edges: usize,
    pub non_acute_triangles: usize,
    /// Edges (interior or boundary) whose dual length is not strictly positive.
    pub nonpositive_dual_edges: usize,
}

impl QualityReport {
    /// Flat JSON object, one key per field.
    pub fn to_json(&self) -> String {
        format!(
            "{{\n  \"delaunay\": {},\n  \"well_centered\": {},\n  \"min_angle\": {},\n  \"max_angle\": {},\n  \"non_delaunay_edges\": {},\n  \"non_acute_triangles\": {},\n  \"nonpositive_dual_edges\": {}\n}}\n",
            self.delaunay,
            self.well_centered,
            self.min_angle,
            self.max_angle,
            self.non_delaunay_edges,
            self.non_acute_triangles,
            self.nonpositive_dual_edges
        )
    }
}

pub fn quality_report(sc: &SimplicialSurface, metrics: &DualMetrics) -> QualityReport {
    let non_delaunay_edges = (0..sc.n_edges())
        .filter(|&e| !sc.is_boundary_edge(e) && !metrics.is_delaunay[e])
        .count();
    let non_acute_triangles = metrics.is_well_centered.iter().filter(|w| !**w).count();
    let nonpositive_dual_edges = metrics
        .dual_edge_length
        .iter()
        .zip(&metrics.edge_length)
        .filter(|(&d, &l)| d <= QUALITY_TOL * l)
        .count();
    let (min_angle, max_angle) = (0..sc.n_triangles())
        .flat_map(|t| triangle_angles(sc.triangle_points(t)))
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), a| (lo.min(a), hi.max(a)));
    QualityReport {
        delaunay: non_delaunay_edges == 0,
        well_centered: non_acute_triangles == 0,
        min_angle,
        max_angle,
        non_delaunay_edges,
        non_acute_triangles,
        nonpositive_dual_edges,
    }
}

pub fn project_to_unit_sphere(points: &[Point3]) -> Result<Vec<Point3>> {
    points
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let n = vec3::norm(p);
            if n == 0.0 {
                Err(Error::OriginPoint(i))
            } else {
                Ok(vec3::scale(1.0 / n, p))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn equilateral_pair() -> SimplicialSurface {
        let h = SQRT3 / 2.0;
        SimplicialSurface::new(
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, h, 0.0], [0.5, -h, 0.0]],
            vec![[0, 1, 2], [1, 0, 3]],
        )
        .unwrap()
    }

    /// Barycentric coordinates of `q` in the planar triangle `p` (z ignored).
    fn barycentric_2d(p: [Point3; 3], q: Point3) -> [f64; 3] {
        let det = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]);
        let l1 = ((q[0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (q[1] - p[0][1])) / det;
        let l2 = ((p[1][0] - p[0][0]) * (q[1] - p[0][1]) - (q[0] - p[0][0]) * (p[1][1] - p[0][1])) / det;
        [1.0 - l1 - l2, l1, l2]
    }

    #[test]
    fn right_triangle_circumcenter_is_hypotenuse_midpoint() {
        let c = circumcenter([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap();
        assert!(vec3::dist(c, [0.5, 0.5, 0.0]) < 1e-15);
    }

    #[test]
    fn equilateral_circumcenter_is_centroid() {
        let p = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, SQRT3 / 2.0, 0.0]];
        let c = circumcenter(p[0], p[1], p[2]).unwrap();
        assert!(vec3::dist(c, barycenter(p)) < 1e-15);
        let d = signed_circumcenter_distance(p[0], p[1], p[2], c);
        assert!((d - 0.288_675_134_594_812_9).abs() < 1e-15);
    }

    #[test]
    fn obtuse_circumcenter_outside() {
        let p = [[0.0, 0.0, 0.0], [4.0, 0.0, 0.0], [2.0, 0.5, 0.0]];
        let c = circumcenter(p[0], p[1], p[2]).unwrap();
        // perpendicular bisector x = 2 meets that of (0,0)-(2,0.5) at y = -3.75
        assert!(vec3::dist(c, [2.0, -3.75, 0.0]) < 1e-13);
        let l = barycentric_2d(p, c);
        assert!(l.iter().any(|&v| v < 0.0));
        assert!(!is_acute(p));
    }

    #[test]
    fn circumcenter_in_plane_and_equidistant_in_3d() {
        let p = [[0.3, -0.2, 1.1], [1.4, 0.5, 0.2], [-0.1, 1.3, 0.7]];
        let c = circumcenter(p[0], p[1], p[2]).unwrap();
        let r: Vec<f64> = p.iter().map(|&q| vec3::dist(q, c)).collect();
        assert!((r[0] - r[1]).abs() < 1e-14 && (r[0] - r[2]).abs() < 1e-14);
        let n = vec3::cross(vec3::sub(p[1], p[0]), vec3::sub(p[2], p[0]));
        assert!(vec3::dot(vec3::sub(c, p[0]), n).abs() < 1e-14);
    }

    #[test]
    fn degenerate_rejected() {
        assert!(circumcenter([0.0; 3], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn glued_equilateral_dual_lengths() {
        let sc = equilateral_pair();
        let m = DualMetrics::compute(&sc).unwrap();
        let shared = sc.edge_id(0, 1).unwrap();
        assert!((m.dual_edge_length[shared] - 1.0 / SQRT3).abs() < 1e-15);
        for e in sc.boundary_edges() {
            assert!((m.dual_edge_length[*e] - 0.5 / SQRT3).abs() < 1e-15);
        }
        let q = quality_report(&sc, &m);
        assert!(q.well_centered && q.delaunay);
        assert!((q.min_angle - std::f64::consts::FRAC_PI_3).abs() < 1e-14);
    }

    #[test]
    fn hypotenuse_dual_length_zero() {
        let sc = SimplicialSurface::new(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], vec![[0, 1, 2]]).unwrap();
        let m = DualMetrics::compute(&sc).unwrap();
        let hyp = sc.edge_id(1, 2).unwrap();
        assert!(m.dual_edge_length[hyp].abs() < 1e-16);
        let q = quality_report(&sc, &m);
        assert!(!q.well_centered);
        assert_eq!(q.non_acute_triangles, 1);
    }

    #[test]
    fn non_delaunay_pair_has_negative_shared_dual() {
        // two flat obtuse triangles on the long edge (0,0)-(4,0)
        let sc = SimplicialSurface::new(
            vec![[0.0, 0.0, 0.0], [4.0, 0.0, 0.0], [2.0, 0.5, 0.0], [2.0, -0.5, 0.0]],
            vec![[0, 1, 2], [1, 0, 3]],
        )
        .unwrap();
        let m = DualMetrics::compute(&sc).unwrap();
        let shared = sc.edge_id(0, 1).unwrap();
        // each circumcenter sits 3.75 beyond the edge, on the far side
        assert!((m.dual_edge_length[shared] + 7.5).abs() < 1e-12);
        let q = quality_report(&sc, &m);
        assert!(!q.delaunay);
        assert_eq!(q.non_delaunay_edges, 1);
    }

    #[test]
    fn dual_length_matches_cotangent_formula() {
        // signed distance cc -> midpoint equals (|e|/2) cot(opposite angle)
        let p = [[0.0, 0.0, 0.0], [3.0, 0.2, 0.4], [1.1, 2.0, -0.3]];
        let c = circumcenter(p[0], p[1], p[2]).unwrap();
        let ang = triangle_angles(p);
        for k in 0..3 {
            let (a, b) = (p[(k + 1) % 3], p[(k + 2) % 3]);
            let expected = 0.5 * vec3::dist(a, b) / ang[k].tan();
            assert!((signed_circumcenter_distance(a, b, p[k], c) - expected).abs() < 1e-13);
        }
        assert!((ang.iter().sum::<f64>() - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn sphere_projection() {
        let out = project_to_unit_sphere(&[[0.0, 0.0, 2.0], [1.0, 1.0, 1.0]]).unwrap();
        assert_eq!(out[0], [0.0, 0.0, 1.0]);
        let s = 1.0 / 3f64.sqrt();
        for c in out[1] {
            assert!((c - s).abs() < 1e-16);
        }
        let again = project_to_unit_sphere(&out).unwrap();
        for (a, b) in again.iter().zip(&out) {
            assert!(vec3::dist(*a, *b) < 1e-16);
        }
        assert_eq!(project_to_unit_sphere(&[[1.0, 0.0, 0.0], [0.0; 3]]), Err(Error::OriginPoint(1)));
    }
}
