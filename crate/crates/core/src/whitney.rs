//! Whitney-map interpolation of edge cochains and velocity reconstruction
//! from a flux cochain.

use std::ops::Deref;

use crate::complex::SimplicialSurface;
use crate::error::{Error, Result};
use crate::geometry::DualMetrics;
use crate::hodge::barycentric_gradients;
use crate::vec3::{self, Point3};

/// A real value per edge, integrated along the edge's canonical direction.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain1 {
    values: Vec<f64>,
}

impl Cochain1 {
    pub fn new(sc: &SimplicialSurface, values: Vec<f64>) -> Result<Self> {
        if values.len() != sc.n_edges() {
            return Err(Error::DimensionMismatch(format!(
                "cochain has {} values for {} edges",
                values.len(),
                sc.n_edges()
            )));
        }
        Ok(Self { values })
    }

    pub fn zeros(sc: &SimplicialSurface) -> Self {
        Self { values: vec![0.0; sc.n_edges()] }
    }

    /// Integrates a closure over every edge: `f(a, b)` gets the canonical endpoints.
    pub fn from_edge_integral(sc: &SimplicialSurface, mut f: impl FnMut(Point3, Point3) -> f64) -> Self {
        let values = sc
            .edges()
            .iter()
            .map(|&[a, b]| f(sc.vertices()[a], sc.vertices()[b]))
            .collect();
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl Deref for Cochain1 {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

const BARY_TOL: f64 = 1e-12;

/// Vector proxy of the Whitney interpolant of `c` inside triangle `t`, at the
/// point with barycentric coordinates `bary` (in the triangle's vertex order).
pub fn whitney_interpolate(sc: &SimplicialSurface, c: &[f64], t: usize, bary: [f64; 3]) -> Result<Point3> {
    if bary.iter().any(|&l| l < -BARY_TOL || !l.is_finite()) || (bary.iter().sum::<f64>() - 1.0).abs() > BARY_TOL {
        return Err(Error::InvalidBarycentric(bary));
    }
    if c.len() != sc.n_edges() {
        return Err(Error::DimensionMismatch(format!("cochain of length {} on {} edges", c.len(), sc.n_edges())));
    }
    let grads = barycentric_gradients(sc.triangle_points(t));
    Ok(interpolate_with(&grads, sc.triangle_edges(t), c, bary))
}

fn interpolate_with(grads: &[Point3; 3], edges: &[(usize, f64); 3], c: &[f64], bary: [f64; 3]) -> Point3 {
    let mut w = [0.0; 3];
    for (k, &(e, sign)) in edges.iter().enumerate() {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let eta = vec3::sub(vec3::scale(bary[i], grads[j]), vec3::scale(bary[j], grads[i]));
        w = vec3::add(w, vec3::scale(sign * c[e], eta));
    }
    w
}

/// Quarter turn within the tangent plane: `w x n`, i.e. a rotation by -pi/2
/// about the unit normal `n`. Turns the proxy of a flux form into the
/// velocity it carries (tangential flux `K dphi` becomes outward radial flow).
pub fn rotate_quarter_turn(w: Point3, n: Point3) -> Point3 {
    vec3::cross(w, n)
}

/// Velocity at each triangle barycenter reconstructed from a flux cochain.
pub fn velocity_from_flux(sc: &SimplicialSurface, metrics: &DualMetrics, c: &[f64]) -> Result<Vec<Point3>> {
    if c.len() != sc.n_edges() {
        return Err(Error::DimensionMismatch(format!("cochain of length {} on {} edges", c.len(), sc.n_edges())));
    }
    Ok((0..sc.n_triangles())
        .map(|t| {
            let grads = barycentric_gradients(sc.triangle_points(t));
            let w = interpolate_with(&grads, sc.triangle_edges(t), c, [1.0 / 3.0; 3]);
            rotate_quarter_turn(w, metrics.normal[t])
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tri(p: [Point3; 3]) -> SimplicialSurface {
        SimplicialSurface::new(p.to_vec(), vec![[0, 1, 2]]).unwrap()
    }

    #[test]
    fn zero_cochain_interpolates_to_zero() {
        let sc = tri([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        let w = whitney_interpolate(&sc, &Cochain1::zeros(&sc), 0, [0.2, 0.3, 0.5]).unwrap();
        assert_eq!(w, [0.0; 3]);
    }

    #[test]
    fn rejects_bad_barycentric() {
        let sc = tri([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        let c = Cochain1::zeros(&sc);
        assert!(matches!(whitney_interpolate(&sc, &c, 0, [0.5, 0.6, -0.1]), Err(Error::InvalidBarycentric(_))));
        assert!(whitney_interpolate(&sc, &c, 0, [0.5, 0.6, 0.1]).is_err());
        assert!(Cochain1::new(&sc, vec![1.0; 2]).is_err());
    }

    #[test]
    fn rotation_preserves_magnitude_and_flips_with_normal() {
        let n = vec3::normalize([0.3, -0.4, 0.8]);
        let w0 = [1.0, 2.0, -0.5];
        let w = vec3::sub(w0, vec3::scale(vec3::dot(w0, n), n));
        let v = rotate_quarter_turn(w, n);
        assert!((vec3::norm(v) - vec3::norm(w)).abs() < 1e-15);
        assert!(vec3::dot(v, w).abs() < 1e-15);
        let flipped = rotate_quarter_turn(w, vec3::scale(-1.0, n));
        assert!(vec3::dist(flipped, vec3::scale(-1.0, v)) < 1e-15);
    }

    #[test]
    fn reversing_triangle_orientation_reverses_velocity() {
        let p = [[0.0, 0.0, 0.0], [1.0, 0.2, 0.0], [0.3, 1.0, 0.0]];
        let a = tri(p);
        let b = SimplicialSurface::new(p.to_vec(), vec![[0, 2, 1]]).unwrap();
        let c = Cochain1::from_edge_integral(&a, |x, y| 0.7 * (y[0] - x[0]) - 0.2 * (y[1] - x[1]));
        let va = velocity_from_flux(&a, &DualMetrics::compute(&a).unwrap(), &c).unwrap();
        let vb = velocity_from_flux(&b, &DualMetrics::compute(&b).unwrap(), &c).unwrap();
        assert!(vec3::dist(va[0], vec3::scale(-1.0, vb[0])) < 1e-15);
        assert!((vec3::norm(va[0]) - vec3::norm(vb[0])).abs() < 1e-15);
    }

    #[test]
    fn tangential_flux_rotates_to_outward_velocity() {
        // a triangle near (2, 0) in the xy-plane, counterclockwise; flux dphi
        let p = [[2.0, -0.1, 0.0], [2.2, 0.1, 0.0], [1.9, 0.15, 0.0]];
        let sc = tri(p);
        let c = Cochain1::from_edge_integral(&sc, |a, b| b[1].atan2(b[0]) - a[1].atan2(a[0]));
        let v = velocity_from_flux(&sc, &DualMetrics::compute(&sc).unwrap(), &c).unwrap()[0];
        assert!(v[0] > 0.0 && v[0].abs() > 10.0 * v[1].abs());
    }

    proptest! {
        #[test]
        fn interpolation_is_linear(
            c1 in prop::array::uniform3(-5.0f64..5.0),
            c2 in prop::array::uniform3(-5.0f64..5.0),
            a in -3.0f64..3.0, b in -3.0f64..3.0,
            l in prop::array::uniform2(0.0f64..0.5),
        ) {
            let sc = tri([[0.1, 0.0, 0.2], [1.3, 0.4, -0.1], [0.2, 1.1, 0.5]]);
            let bary = [l[0], l[1], 1.0 - l[0] - l[1]];
            let mix: Vec<f64> = c1.iter().zip(&c2).map(|(x, y)| a * x + b * y).collect();
            let w = whitney_interpolate(&sc, &mix, 0, bary).unwrap();
            let w1 = whitney_interpolate(&sc, &c1, 0, bary).unwrap();
            let w2 = whitney_interpolate(&sc, &c2, 0, bary).unwrap();
            let expected = vec3::add(vec3::scale(a, w1), vec3::scale(b, w2));
            prop_assert!(vec3::dist(w, expected) < 1e-12);
        }
    }
}
