//! Discrete Hodge stars on edge cochains.
//!
//! Two interchangeable flavors feed the same mixed system:
//! the diagonal primal-dual star (dual length over primal length) and the
//! Whitney 1-form mass matrix.

use std::fmt;
use std::str::FromStr;

use crate::complex::SimplicialSurface;
use crate::error::{Error, Result};
use crate::geometry::{DualMetrics, QUALITY_TOL};
use crate::linalg::CsrMatrix;
use crate::vec3::{self, Point3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HodgeFlavor {
    /// Diagonal circumcentric-dual star.
    Dec,
    /// Mass matrix of Whitney 1-forms.
    Whitney,
}

impl fmt::Display for HodgeFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HodgeFlavor::Dec => "dec",
            HodgeFlavor::Whitney => "whitney",
        })
    }
}

impl FromStr for HodgeFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dec" => Ok(HodgeFlavor::Dec),
            "whitney" | "feec" => Ok(HodgeFlavor::Whitney),
            other => Err(Error::InvalidSpec(format!("unknown hodge flavor '{other}'"))),
        }
    }
}

/// Edges whose diagonal star entry is not strictly positive. The DEC system
/// is still assembled; the caller decides how loudly to report it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonDelaunayWarning {
    pub edges: Vec<usize>,
}

impl fmt::Display for NonDelaunayWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} edge(s) have a nonpositive DEC Hodge star entry", self.edges.len())
    }
}

#[derive(Debug, Clone)]
pub struct HodgeStar1 {
    pub matrix: CsrMatrix,
    pub flavor: HodgeFlavor,
    pub warning: Option<NonDelaunayWarning>,
}

impl HodgeStar1 {
    pub fn build(flavor: HodgeFlavor, sc: &SimplicialSurface, metrics: &DualMetrics) -> Result<Self> {
        match flavor {
            HodgeFlavor::Dec => Ok(dec_hodge_star_1(sc, metrics)),
            HodgeFlavor::Whitney => whitney_mass_matrix_1(sc, metrics),
        }
    }
}

pub fn dec_hodge_star_1(sc: &SimplicialSurface, metrics: &DualMetrics) -> HodgeStar1 {
    let diag: Vec<f64> = metrics
        .dual_edge_length
        .iter()
        .zip(&metrics.edge_length)
        .map(|(d, l)| d / l)
        .collect();
    let bad: Vec<usize> = (0..sc.n_edges()).filter(|&e| diag[e] <= QUALITY_TOL).collect();
    let warning = if bad.is_empty() {
        None
    } else {
        let w = NonDelaunayWarning { edges: bad };
        log::warn!("{w}");
        Some(w)
    };
    // from_diagonal drops exact zeros; keep the full diagonal pattern
    let triplets: Vec<_> = diag.iter().enumerate().map(|(e, &v)| (e, e, v)).collect();
    HodgeStar1 {
        matrix: CsrMatrix::from_triplets(sc.n_edges(), sc.n_edges(), &triplets),
        flavor: HodgeFlavor::Dec,
        warning,
    }
}

/// Gradients of the three barycentric coordinates of a flat triangle.
pub fn barycentric_gradients(p: [Point3; 3]) -> [Point3; 3] {
    let n = vec3::cross(vec3::sub(p[1], p[0]), vec3::sub(p[2], p[0]));
    let twice_area = vec3::norm(n);
    let n_hat = vec3::scale(1.0 / twice_area, n);
    std::array::from_fn(|i| {
        let opposite = vec3::sub(p[(i + 2) % 3], p[(i + 1) % 3]);
        vec3::scale(1.0 / twice_area, vec3::cross(n_hat, opposite))
    })
}

/// `M[k][l] = integral of <eta_k, eta_l>` over the triangle, where `eta_k` is
/// the Whitney form of local edge `k` traversed from local vertex `k+1` to
/// `k+2`. Exact: uses the moments `integral(l_a l_b) = A (1 + delta_ab) / 12`.
pub fn whitney_local_mass(p: [Point3; 3]) -> [[f64; 3]; 3] {
    let area = 0.5 * vec3::norm(vec3::cross(vec3::sub(p[1], p[0]), vec3::sub(p[2], p[0])));
    let g = barycentric_gradients(p);
    let gram = |a: usize, b: usize| vec3::dot(g[a], g[b]);
    let moment = |a: usize, b: usize| if a == b { area / 6.0 } else { area / 12.0 };
    std::array::from_fn(|k| {
        std::array::from_fn(|l| {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            let (m, n) = ((l + 1) % 3, (l + 2) % 3);
            moment(i, m) * gram(j, n) - moment(i, n) * gram(j, m) - moment(j, m) * gram(i, n)
                + moment(j, n) * gram(i, m)
        })
    })
}

pub fn whitney_mass_matrix_1(sc: &SimplicialSurface, metrics: &DualMetrics) -> Result<HodgeStar1> {
    let mut triplets = Vec::with_capacity(9 * sc.n_triangles());
    for t in 0..sc.n_triangles() {
        if !(metrics.tri_area[t] > 0.0) {
            return Err(Error::DegenerateTriangle(t));
        }
        let local = whitney_local_mass(sc.triangle_points(t));
        let edges = sc.triangle_edges(t);
        for (k, &(ek, sk)) in edges.iter().enumerate() {
            for (l, &(el, sl)) in edges.iter().enumerate() {
                triplets.push((ek, el, sk * sl * local[k][l]));
            }
        }
    }
    Ok(HodgeStar1 {
        matrix: CsrMatrix::from_triplets(sc.n_edges(), sc.n_edges(), &triplets),
        flavor: HodgeFlavor::Whitney,
        warning: None,
    })
}
