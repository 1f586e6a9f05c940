//! Mixed Darcy solver: flux on edges, pressure on triangles.
//!
//! The discrete system is
//!
//! ```text
//! [ -H/m   D^T ] [ sigma ]   [ 0 ]
//! [  D     0   ] [   p   ] = [ 0 ]
//! ```
//!
//! with `H` a Hodge star on edge cochains, `D = d1` the triangle-edge
//! coboundary and `m` the mobility (permeability over viscosity). Boundary
//! fluxes are prescribed and one pressure is pinned; both are eliminated
//! from the unknowns, which keeps the reduced matrix symmetric.

use crate::analytic::AnalyticProblem;
use crate::complex::SimplicialSurface;
use crate::error::{Error, Result};
use crate::geometry::{quality_report, DualMetrics};
use crate::hodge::{HodgeFlavor, HodgeStar1, NonDelaunayWarning};
use crate::linalg::{norm_inf, saddle_point, solve_symmetric_indefinite, CsrMatrix, SolveStats, SolverOptions};
use crate::vec3::{self, Point3};
use crate::whitney::{velocity_from_flux, Cochain1};

/// Relative tolerance for the Neumann compatibility condition.
pub const COMPATIBILITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct DarcyProblem<'a> {
    pub complex: &'a SimplicialSurface,
    pub metrics: &'a DualMetrics,
    pub flavor: HodgeFlavor,
    /// Prescribed flux per boundary edge, aligned with
    /// `complex.boundary_edges()`, integrated along the canonical direction.
    pub boundary_flux: Vec<f64>,
    pub pinned_triangle: usize,
    pub pinned_pressure: f64,
    /// Permeability over viscosity.
    pub mobility: f64,
}

impl<'a> DarcyProblem<'a> {
    pub fn new(
        complex: &'a SimplicialSurface,
        metrics: &'a DualMetrics,
        flavor: HodgeFlavor,
        boundary_flux: Vec<f64>,
    ) -> Result<Self> {
        if boundary_flux.len() != complex.boundary_edges().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} boundary fluxes for {} boundary edges",
                boundary_flux.len(),
                complex.boundary_edges().len()
            )));
        }
        if complex.n_triangles() == 0 {
            return Err(Error::InvalidSpec("empty mesh".into()));
        }
        Ok(Self {
            complex,
            metrics,
            flavor,
            boundary_flux,
            pinned_triangle: 0,
            pinned_pressure: 0.0,
            mobility: 1.0,
        })
    }

    /// Boundary fluxes taken from the exact solution; the pressure is pinned
    /// in the triangle closest to the point of the inner boundary on the
    /// positive x-axis, at the exact pressure of its sample location.
    pub fn from_analytic(
        complex: &'a SimplicialSurface,
        metrics: &'a DualMetrics,
        flavor: HodgeFlavor,
        analytic: &AnalyticProblem,
    ) -> Result<Self> {
        let boundary_flux = complex
            .boundary_edges()
            .iter()
            .map(|&e| {
                let [a, b] = complex.edges()[e];
                analytic.exact_edge_flux(complex.vertices()[a], complex.vertices()[b])
            })
            .collect::<Result<Vec<_>>>()?;
        let mut problem = Self::new(complex, metrics, flavor, boundary_flux)?;
        let reference: Point3 = match analytic {
            AnalyticProblem::Annulus(a) => [a.r0, 0.0, 0.0],
            AnalyticProblem::Hemisphere(h) => [h.theta0.sin(), 0.0, h.theta0.cos()],
        };
        let pin = (0..complex.n_triangles())
            .min_by(|&s, &t| {
                vec3::dist(metrics.barycenter[s], reference).total_cmp(&vec3::dist(metrics.barycenter[t], reference))
            })
            .unwrap();
        let locations = pressure_locations(complex, metrics);
        problem.pinned_triangle = pin;
        problem.pinned_pressure = analytic.pressure_at(locations[pin]);
        Ok(problem)
    }

    pub fn with_pin(mut self, triangle: usize, value: f64) -> Result<Self> {
        if triangle >= self.complex.n_triangles() {
            return Err(Error::InvalidSpec(format!("pinned triangle {triangle} out of range")));
        }
        self.pinned_triangle = triangle;
        self.pinned_pressure = value;
        Ok(self)
    }

    pub fn with_mobility(mut self, mobility: f64) -> Result<Self> {
        if !(mobility > 0.0 && mobility.is_finite()) {
            return Err(Error::InvalidSpec(format!("mobility must be positive, got {mobility}")));
        }
        self.mobility = mobility;
        Ok(self)
    }

    /// Net outflow implied by the boundary data (`sum of sign * flux`), and
    /// the sum of absolute boundary fluxes.
    pub fn boundary_balance(&self) -> (f64, f64) {
        let mut net = 0.0;
        let mut total = 0.0;
        for (&e, &v) in self.complex.boundary_edges().iter().zip(&self.boundary_flux) {
            let (t, _) = self.complex.edge_triangles(e);
            let sign = self.complex.triangle_edges(t).iter().find(|(id, _)| *id == e).unwrap().1;
            net += sign * v;
            total += v.abs();
        }
        (net, total)
    }
}

/// Bookkeeping between the full `[sigma; p]` vector and the reduced unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct DofMap {
    pub n_edges: usize,
    pub n_triangles: usize,
    /// Edge ids solved for, in reduced order.
    pub interior_edges: Vec<usize>,
    /// Triangle ids solved for, following the edges.
    pub free_triangles: Vec<usize>,
}

impl DofMap {
    pub fn n_unknowns(&self) -> usize {
        self.interior_edges.len() + self.free_triangles.len()
    }

    fn free_indices(&self) -> Vec<usize> {
        self.interior_edges
            .iter()
            .copied()
            .chain(self.free_triangles.iter().map(|t| self.n_edges + t))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Assembly {
    pub matrix: CsrMatrix,
    pub rhs: Vec<f64>,
    pub dofs: DofMap,
    pub hodge: HodgeStar1,
}

pub fn assemble(problem: &DarcyProblem) -> Result<Assembly> {
    let sc = problem.complex;
    if problem.pinned_triangle >= sc.n_triangles() {
        return Err(Error::InvalidSpec(format!("pinned triangle {} out of range", problem.pinned_triangle)));
    }
    let (net, total) = problem.boundary_balance();
    if net.abs() > COMPATIBILITY_TOL * total {
        return Err(Error::IncompatibleBc { net, total });
    }

    let hodge = HodgeStar1::build(problem.flavor, sc, problem.metrics)?;
    let h = if problem.mobility == 1.0 { hodge.matrix.clone() } else { hodge.matrix.scaled(1.0 / problem.mobility) };
    let full = saddle_point(&h, &sc.coboundary_1())?;

    let n_edges = sc.n_edges();
    let dofs = DofMap {
        n_edges,
        n_triangles: sc.n_triangles(),
        interior_edges: sc.interior_edges(),
        free_triangles: (0..sc.n_triangles()).filter(|&t| t != problem.pinned_triangle).collect(),
    };
    let free = dofs.free_indices();
    let fixed: Vec<usize> = sc
        .boundary_edges()
        .iter()
        .copied()
        .chain(std::iter::once(n_edges + problem.pinned_triangle))
        .collect();
    let fixed_values: Vec<f64> = problem
        .boundary_flux
        .iter()
        .copied()
        .chain(std::iter::once(problem.pinned_pressure))
        .collect();

    let matrix = full.select(&free, &free);
    let coupling = full.select(&free, &fixed);
    let rhs: Vec<f64> = coupling.spmv(&fixed_values)?.into_iter().map(|v| -v).collect();
    Ok(Assembly { matrix, rhs, dofs, hodge })
}

#[derive(Debug, Clone)]
pub struct DarcySolution {
    pub flavor: HodgeFlavor,
    /// Flux on every edge, prescribed boundary values included.
    pub sigma: Cochain1,
    /// Pressure per triangle.
    pub pressure: Vec<f64>,
    /// Relative residual of the reduced linear system.
    pub residual_norm: f64,
    /// `max |d1 sigma|` over all triangles.
    pub divergence_norm: f64,
    pub stats: SolveStats,
    pub warning: Option<NonDelaunayWarning>,
}

pub fn solve(problem: &DarcyProblem, opts: &SolverOptions) -> Result<DarcySolution> {
    let sc = problem.complex;
    let assembly = assemble(problem)?;
    let linear = solve_symmetric_indefinite(&assembly.matrix, &assembly.rhs, opts).map_err(|err| match err {
        Error::SingularSystem(msg) => {
            let q = quality_report(sc, problem.metrics);
            Error::SingularSystem(format!(
                "{msg} ({} flavor, {} triangles, delaunay={}, well_centered={}, nonpositive dual edges={})",
                problem.flavor,
                sc.n_triangles(),
                q.delaunay,
                q.well_centered,
                q.nonpositive_dual_edges
            ))
        }
        other => other,
    })?;

    let dofs = &assembly.dofs;
    let mut sigma = vec![0.0; sc.n_edges()];
    for (&e, &v) in sc.boundary_edges().iter().zip(&problem.boundary_flux) {
        sigma[e] = v;
    }
    let (edge_part, tri_part) = linear.x.split_at(dofs.interior_edges.len());
    for (&e, &v) in dofs.interior_edges.iter().zip(edge_part) {
        sigma[e] = v;
    }
    let mut pressure = vec![0.0; sc.n_triangles()];
    pressure[problem.pinned_triangle] = problem.pinned_pressure;
    for (&t, &v) in dofs.free_triangles.iter().zip(tri_part) {
        pressure[t] = v;
    }
    let divergence_norm = norm_inf(&sc.coboundary_1().spmv(&sigma)?);

    Ok(DarcySolution {
        flavor: problem.flavor,
        sigma: Cochain1::new(sc, sigma)?,
        pressure,
        residual_norm: linear.residual,
        divergence_norm,
        stats: linear.stats,
        warning: assembly.hodge.warning,
    })
}

/// Where each triangle's pressure is compared with the exact solution:
/// circumcenters on well-centered meshes, barycenters otherwise.
pub fn pressure_locations(sc: &SimplicialSurface, metrics: &DualMetrics) -> Vec<Point3> {
    if metrics.is_well_centered.iter().all(|&w| w) && sc.n_triangles() > 0 {
        metrics.circumcenter.clone()
    } else {
        metrics.barycenter.clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub triangle: usize,
    /// Radial coordinate of the (projected) barycenter.
    pub speed_r: f64,
    pub speed_computed: f64,
    pub speed_exact: f64,
    /// Radial coordinate of the (projected) pressure location.
    pub pressure_r: f64,
    /// Computed pressure after gauge alignment.
    pub pressure_computed: f64,
    pub pressure_exact: f64,
    pub barycenter: Point3,
    pub velocity: Point3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// Area-weighted L2 speed error over the L2 norm of the exact speed.
    pub speed_l2_rel: f64,
    pub speed_max: f64,
    /// Area-weighted L2 pressure error over the L2 norm of the mean-free
    /// exact pressure, both after gauge alignment.
    pub pressure_l2_rel: f64,
    pub pressure_max: f64,
    /// Constant subtracted from the computed pressures for alignment.
    pub pressure_offset: f64,
    pub samples: Vec<Sample>,
}

/// Compares a flux/pressure pair with the exact solution. Speeds come from
/// the Whitney interpolant at barycenters; computed pressures are shifted by
/// the area-weighted mean of `computed - exact` before comparison.
pub fn error_report(
    sc: &SimplicialSurface,
    metrics: &DualMetrics,
    sigma: &[f64],
    pressure: &[f64],
    analytic: &AnalyticProblem,
) -> Result<ErrorReport> {
    if pressure.len() != sc.n_triangles() {
        return Err(Error::DimensionMismatch(format!(
            "{} pressures for {} triangles",
            pressure.len(),
            sc.n_triangles()
        )));
    }
    let velocity = velocity_from_flux(sc, metrics, sigma)?;
    let locations = pressure_locations(sc, metrics);
    let area = &metrics.tri_area;
    let total_area = metrics.total_area();

    let exact_p: Vec<f64> = locations.iter().map(|&x| analytic.pressure_at(x)).collect();
    let offset = (0..sc.n_triangles()).map(|t| area[t] * (pressure[t] - exact_p[t])).sum::<f64>() / total_area;
    let exact_mean = (0..sc.n_triangles()).map(|t| area[t] * exact_p[t]).sum::<f64>() / total_area;

    let mut samples = Vec::with_capacity(sc.n_triangles());
    let (mut se, mut sn, mut smax, mut pe, mut pn, mut pmax) = (0.0, 0.0, 0.0f64, 0.0, 0.0, 0.0f64);
    for t in 0..sc.n_triangles() {
        let bc = metrics.barycenter[t];
        let speed = vec3::norm(velocity[t]);
        let speed_exact = analytic.speed_at(bc);
        let p = pressure[t] - offset;
        let ds = speed - speed_exact;
        let dp = p - exact_p[t];
        se += area[t] * ds * ds;
        sn += area[t] * speed_exact * speed_exact;
        smax = smax.max(ds.abs());
        pe += area[t] * dp * dp;
        pn += area[t] * (exact_p[t] - exact_mean).powi(2);
        pmax = pmax.max(dp.abs());
        samples.push(Sample {
            triangle: t,
            speed_r: analytic.radial_coordinate(bc),
            speed_computed: speed,
            speed_exact,
            pressure_r: analytic.radial_coordinate(locations[t]),
            pressure_computed: p,
            pressure_exact: exact_p[t],
            barycenter: bc,
            velocity: velocity[t],
        });
    }
    let ratio = |err: f64, norm: f64| if norm > 0.0 { (err / norm).sqrt() } else { err.sqrt() };
    Ok(ErrorReport {
        speed_l2_rel: ratio(se, sn),
        speed_max: smax,
        pressure_l2_rel: ratio(pe, pn),
        pressure_max: pmax,
        pressure_offset: offset,
        samples,
    })
}

impl DarcySolution {
    pub fn error_report(
        &self,
        sc: &SimplicialSurface,
        metrics: &DualMetrics,
        analytic: &AnalyticProblem,
    ) -> Result<ErrorReport> {
        error_report(sc, metrics, &self.sigma, &self.pressure, analytic)
    }
}
