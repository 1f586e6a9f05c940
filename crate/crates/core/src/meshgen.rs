//! Structured meshes of the two test domains and 1-to-4 refinement.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::complex::SimplicialSurface;
use crate::error::{Error, Result};
use crate::geometry::project_to_unit_sphere;
use crate::vec3::{self, Point3};

/// Planar annulus `r0 <= |x| <= r1` in the `z = 0` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusSpec {
    pub r0: f64,
    pub r1: f64,
    pub n_rings: usize,
    pub n_sectors: usize,
}

impl Default for AnnulusSpec {
    fn default() -> Self {
        Self { r0: 1.0, r1: 2.0, n_rings: 4, n_sectors: 24 }
    }
}

impl AnnulusSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.r0 > 0.0 && self.r1 > self.r0 && self.r1.is_finite()) {
            return Err(Error::InvalidSpec(format!("need 0 < r0 < r1, got r0={} r1={}", self.r0, self.r1)));
        }
        if self.n_rings == 0 || self.n_sectors < 3 {
            return Err(Error::InvalidSpec(format!(
                "need rings >= 1 and sectors >= 3, got {} and {}",
                self.n_rings, self.n_sectors
            )));
        }
        Ok(())
    }
}

/// Unit hemisphere `z >= 0` with the polar cap `theta < theta0` removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HemisphereSpec {
    /// Colatitude of the hole boundary, measured from the +z axis.
    pub theta0: f64,
    pub n_lat: usize,
    pub n_lon: usize,
}

impl Default for HemisphereSpec {
    fn default() -> Self {
        Self { theta0: PI / 6.0, n_lat: 4, n_lon: 30 }
    }
}

impl HemisphereSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.theta0 > 0.0 && self.theta0 < FRAC_PI_2) {
            return Err(Error::InvalidSpec(format!("theta0 must lie in (0, pi/2), got {}", self.theta0)));
        }
        if self.n_lat == 0 || self.n_lon < 3 {
            return Err(Error::InvalidSpec(format!(
                "need lat >= 1 and lon >= 3, got {} and {}",
                self.n_lat, self.n_lon
            )));
        }
        Ok(())
    }
}

/// Ring/sector triangulation with `2 * n_rings * n_sectors` counterclockwise
/// triangles. Ring radii are geometric (`r0 * (r1/r0)^(k/n)`) and each ring is
/// rotated half a sector from the previous one, which keeps triangle shapes
/// uniform across the annulus and acute for reasonable ring/sector ratios.
/// The inner ring holds vertex ids `0..n_sectors`.
pub fn annulus_mesh(spec: &AnnulusSpec) -> Result<SimplicialSurface> {
    spec.validate()?;
    let n = spec.n_sectors;
    let mut vertices = Vec::with_capacity((spec.n_rings + 1) * n);
    for k in 0..=spec.n_rings {
        let r = if k == 0 {
            spec.r0
        } else if k == spec.n_rings {
            spec.r1
        } else {
            spec.r0 * (spec.r1 / spec.r0).powf(k as f64 / spec.n_rings as f64)
        };
        for j in 0..n {
            let phi = 2.0 * PI * (j as f64 + 0.5 * k as f64) / n as f64;
            vertices.push([r * phi.cos(), r * phi.sin(), 0.0]);
        }
    }
    let id = |k: usize, j: usize| k * n + j % n;
    let mut triangles = Vec::with_capacity(2 * spec.n_rings * n);
    for k in 0..spec.n_rings {
        for j in 0..n {
            // outer vertex j sits half a sector past inner vertex j
            triangles.push([id(k, j), id(k + 1, j), id(k, j + 1)]);
            triangles.push([id(k + 1, j), id(k + 1, j + 1), id(k, j + 1)]);
        }
    }
    SimplicialSurface::new(vertices, triangles)
}

/// Latitude/longitude triangulation between `theta0` and the equator with
/// `2 * n_lat * n_lon` triangles, outward oriented. Each grid quad is split
/// along its shorter diagonal; on ties (the lat/lon quads are isosceles
/// trapezoids) the diagonal alternates in a checkerboard pattern. Hole-ring
/// vertices have ids `0..n_lon`.
pub fn hemisphere_mesh(spec: &HemisphereSpec) -> Result<SimplicialSurface> {
    spec.validate()?;
    let n = spec.n_lon;
    let mut vertices = Vec::with_capacity((spec.n_lat + 1) * n);
    for k in 0..=spec.n_lat {
        let theta = if k == spec.n_lat {
            FRAC_PI_2
        } else {
            spec.theta0 + (FRAC_PI_2 - spec.theta0) * k as f64 / spec.n_lat as f64
        };
        let (st, ct) = theta.sin_cos();
        for j in 0..n {
            let (sp, cp) = (2.0 * PI * j as f64 / n as f64).sin_cos();
            vertices.push([st * cp, st * sp, ct]);
        }
    }
    let vertices = project_to_unit_sphere(&vertices)?;
    let id = |k: usize, j: usize| k * n + j % n;
    let mut triangles = Vec::with_capacity(2 * spec.n_lat * n);
    for k in 0..spec.n_lat {
        for j in 0..n {
            let (a, b, c, d) = (id(k, j), id(k + 1, j), id(k + 1, j + 1), id(k, j + 1));
            let main = vec3::dist(vertices[a], vertices[c]);
            let anti = vec3::dist(vertices[b], vertices[d]);
            let tie = (main - anti).abs() <= 1e-12 * main;
            let use_main = if tie { (j + k) % 2 == 0 } else { main < anti };
            if use_main {
                triangles.push([a, b, c]);
                triangles.push([a, c, d]);
            } else {
                triangles.push([a, b, d]);
                triangles.push([b, c, d]);
            }
        }
    }
    SimplicialSurface::new(vertices, triangles)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    None,
    UnitSphere,
}

/// Splits every triangle into four through its edge midpoints. Parent
/// vertices keep their ids and coordinates; the midpoint of edge `e` gets id
/// `V + e`. With `Projection::UnitSphere` only the new midpoints are projected.
pub fn quadrisect(sc: &SimplicialSurface, projection: Projection) -> Result<SimplicialSurface> {
    let nv = sc.n_vertices();
    let mut midpoints: Vec<Point3> = sc
        .edges()
        .iter()
        .map(|&[a, b]| vec3::midpoint(sc.vertices()[a], sc.vertices()[b]))
        .collect();
    if projection == Projection::UnitSphere {
        midpoints = project_to_unit_sphere(&midpoints)?;
    }
    let mut vertices = sc.vertices().to_vec();
    vertices.extend(midpoints);

    let mut triangles = Vec::with_capacity(4 * sc.n_triangles());
    for (t, &[a, b, c]) in sc.triangles().iter().enumerate() {
        // local edge k is opposite vertex k
        let [(e_bc, _), (e_ca, _), (e_ab, _)] = *sc.triangle_edges(t);
        let (m_bc, m_ca, m_ab) = (nv + e_bc, nv + e_ca, nv + e_ab);
        triangles.push([a, m_ab, m_ca]);
        triangles.push([m_ab, b, m_bc]);
        triangles.push([m_ca, m_bc, c]);
        triangles.push([m_ab, m_bc, m_ca]);
    }
    SimplicialSurface::new(vertices, triangles)
}

/// Applies `quadrisect` `levels` times.
pub fn refine(sc: &SimplicialSurface, levels: usize, projection: Projection) -> Result<SimplicialSurface> {
    let mut mesh = sc.clone();
    for _ in 0..levels {
        mesh = quadrisect(&mesh, projection)?;
    }
    Ok(mesh)
}
