//! End-to-end experiment runs: mesh, solve, compare with the exact
//! solution, and write CSV / SVG / text artifacts. The `darcy` binary is a
//! thin argument parser over this module.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::analytic::{AnalyticProblem, AnnulusProblem, HemisphereProblem};
use crate::complex::SimplicialSurface;
use crate::darcy::{solve, DarcyProblem, DarcySolution, ErrorReport};
use crate::error::{Error, Result};
use crate::geometry::{quality_report, DualMetrics, QualityReport};
use crate::hodge::HodgeFlavor;
use crate::linalg::{SolveMethod, SolverOptions};
use crate::mesh_io::{self, fmt_f64};
use crate::meshgen::{annulus_mesh, hemisphere_mesh, refine, AnnulusSpec, HemisphereSpec, Projection};
use crate::svg::ScatterPlot;

/// Refinement cap; each level multiplies the triangle count by four.
pub const MAX_LEVELS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Annulus(AnnulusSpec),
    Hemisphere(HemisphereSpec),
}

impl Domain {
    pub fn name(&self) -> &'static str {
        match self {
            Domain::Annulus(_) => "annulus",
            Domain::Hemisphere(_) => "hemisphere",
        }
    }

    pub fn base_mesh(&self) -> Result<SimplicialSurface> {
        match self {
            Domain::Annulus(spec) => annulus_mesh(spec),
            Domain::Hemisphere(spec) => hemisphere_mesh(spec),
        }
    }

    pub fn projection(&self) -> Projection {
        match self {
            Domain::Annulus(_) => Projection::None,
            Domain::Hemisphere(_) => Projection::UnitSphere,
        }
    }

    pub fn analytic(&self, s0: f64, c0: f64) -> Result<AnalyticProblem> {
        Ok(match self {
            Domain::Annulus(spec) => {
                AnalyticProblem::Annulus(AnnulusProblem { c0, ..AnnulusProblem::new(spec.r0, spec.r1, s0)? })
            }
            Domain::Hemisphere(spec) => {
                AnalyticProblem::Hemisphere(HemisphereProblem { c0, ..HemisphereProblem::new(spec.theta0, s0)? })
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub domain: Domain,
    pub method: HodgeFlavor,
    /// Read the base mesh from this file instead of generating it.
    pub mesh_file: Option<PathBuf>,
    pub levels: usize,
    pub output_dir: PathBuf,
    pub c0: f64,
    pub s0: f64,
    pub emit_velocities: bool,
    /// Record wall-clock solve times in `convergence.csv` (otherwise 0).
    pub timing: bool,
    pub solver: SolverOptions,
}

impl RunConfig {
    pub fn new(domain: Domain, method: HodgeFlavor, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            domain,
            method,
            mesh_file: None,
            levels: 0,
            output_dir: output_dir.into(),
            c0: 0.0,
            s0: 1.0,
            emit_velocities: false,
            timing: true,
            solver: SolverOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels > MAX_LEVELS {
            return Err(Error::InvalidSpec(format!("at most {MAX_LEVELS} refinement levels, got {}", self.levels)));
        }
        if !self.s0.is_finite() || !self.c0.is_finite() {
            return Err(Error::InvalidSpec("inflow speed and gauge must be finite".into()));
        }
        if !(self.solver.tol > 0.0 && self.solver.tol < 1.0) {
            return Err(Error::InvalidSpec(format!("solver tolerance must lie in (0, 1), got {}", self.solver.tol)));
        }
        match &self.domain {
            Domain::Annulus(spec) => spec.validate(),
            Domain::Hemisphere(spec) => spec.validate(),
        }
    }

    pub fn base_mesh(&self) -> Result<SimplicialSurface> {
        match &self.mesh_file {
            Some(path) => mesh_io::read_mesh(path),
            None => self.domain.base_mesh(),
        }
    }
}

/// Everything produced by one solve.
#[derive(Debug, Clone)]
pub struct SolveRun {
    pub mesh: SimplicialSurface,
    pub metrics: DualMetrics,
    pub quality: QualityReport,
    pub analytic: AnalyticProblem,
    pub solution: DarcySolution,
    pub report: ErrorReport,
    pub conservation: Conservation,
    pub solve_seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conservation {
    /// Signed sum of boundary fluxes over all loops (net outflow).
    pub net_outflow: f64,
    /// Flow entering through the loop closest to the symmetry axis.
    pub inflow_total: f64,
    /// Flow leaving through the remaining loops.
    pub outflow_total: f64,
}

/// Index of the boundary loop closest to the z-axis (the hole).
pub fn inflow_loop(mesh: &SimplicialSurface, analytic: &AnalyticProblem) -> Option<usize> {
    mesh.boundary_loops()
        .iter()
        .enumerate()
        .map(|(i, lp)| {
            let mean = lp
                .vertices
                .iter()
                .map(|&v| analytic.radial_coordinate(mesh.vertices()[v]))
                .sum::<f64>()
                / lp.vertices.len() as f64;
            (i, mean)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
}

pub fn conservation(mesh: &SimplicialSurface, analytic: &AnalyticProblem, sigma: &[f64]) -> Conservation {
    let inflow = inflow_loop(mesh, analytic);
    let mut c = Conservation { net_outflow: 0.0, inflow_total: 0.0, outflow_total: 0.0 };
    for (i, lp) in mesh.boundary_loops().iter().enumerate() {
        let out = lp.circulation(sigma);
        c.net_outflow += out;
        if Some(i) == inflow {
            c.inflow_total -= out;
        } else {
            c.outflow_total += out;
        }
    }
    c
}

/// Solves on an already built mesh.
pub fn solve_on_mesh(
    mesh: SimplicialSurface,
    analytic: AnalyticProblem,
    method: HodgeFlavor,
    solver: &SolverOptions,
) -> Result<SolveRun> {
    let metrics = DualMetrics::compute(&mesh)?;
    let quality = quality_report(&mesh, &metrics);
    let start = Instant::now();
    let problem = DarcyProblem::from_analytic(&mesh, &metrics, method, &analytic)?;
    let solution = solve(&problem, solver)?;
    let solve_seconds = start.elapsed().as_secs_f64();
    let report = solution.error_report(&mesh, &metrics, &analytic)?;
    let conservation = conservation(&mesh, &analytic, &solution.sigma);
    Ok(SolveRun { mesh, metrics, quality, analytic, solution, report, conservation, solve_seconds })
}

/// Builds the configured mesh at `config.levels` and solves.
pub fn run_solve(config: &RunConfig) -> Result<SolveRun> {
    config.validate()?;
    let mesh = refine(&config.base_mesh()?, config.levels, config.domain.projection())?;
    solve_on_mesh(mesh, config.domain.analytic(config.s0, config.c0)?, config.method, &config.solver)
}

fn csv_rows(header: &str, rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut out = String::new();
    writeln!(out, "{header}").unwrap();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    out
}

/// `r,speed_computed,speed_exact`, one row per triangle in id order.
pub fn speeds_csv(report: &ErrorReport) -> String {
    csv_rows(
        "r,speed_computed,speed_exact",
        report.samples.iter().map(|s| vec![s.speed_r, s.speed_computed, s.speed_exact]),
    )
}

/// `r,p_computed,p_exact`, one row per triangle in id order; computed
/// pressures are gauge aligned.
pub fn pressures_csv(report: &ErrorReport) -> String {
    csv_rows(
        "r,p_computed,p_exact",
        report.samples.iter().map(|s| vec![s.pressure_r, s.pressure_computed, s.pressure_exact]),
    )
}

/// `x,y,z,vx,vy,vz` at triangle barycenters.
pub fn velocities_csv(report: &ErrorReport) -> String {
    csv_rows(
        "x,y,z,vx,vy,vz",
        report.samples.iter().map(|s| {
            let (b, v) = (s.barycenter, s.velocity);
            vec![b[0], b[1], b[2], v[0], v[1], v[2]]
        }),
    )
}

pub fn errors_txt(run: &SolveRun, domain: &str) -> String {
    let mut out = String::new();
    let r = &run.report;
    let s = &run.solution;
    writeln!(out, "domain {domain}").unwrap();
    writeln!(out, "method {}", s.flavor).unwrap();
    writeln!(out, "triangles {}", run.mesh.n_triangles()).unwrap();
    writeln!(out, "h_max {}", fmt_f64(run.metrics.h_max())).unwrap();
    writeln!(out, "speed_l2_rel {}", fmt_f64(r.speed_l2_rel)).unwrap();
    writeln!(out, "speed_max {}", fmt_f64(r.speed_max)).unwrap();
    writeln!(out, "pressure_l2_rel {}", fmt_f64(r.pressure_l2_rel)).unwrap();
    writeln!(out, "pressure_max {}", fmt_f64(r.pressure_max)).unwrap();
    writeln!(out, "pressure_offset {}", fmt_f64(r.pressure_offset)).unwrap();
    writeln!(out, "residual_norm {}", fmt_f64(s.residual_norm)).unwrap();
    writeln!(out, "divergence_norm {}", fmt_f64(s.divergence_norm)).unwrap();
    let method = match s.stats.method {
        SolveMethod::SparseLu => "sparse-lu",
        SolveMethod::Minres => "minres",
    };
    writeln!(out, "solver {method} iterations {} unknowns {}", s.stats.iterations, s.stats.unknowns).unwrap();
    writeln!(out, "net_boundary_outflow {}", fmt_f64(run.conservation.net_outflow)).unwrap();
    writeln!(out, "inflow_total {}", fmt_f64(run.conservation.inflow_total)).unwrap();
    writeln!(out, "outflow_total {}", fmt_f64(run.conservation.outflow_total)).unwrap();
    match &s.warning {
        Some(w) => writeln!(out, "warning {w}").unwrap(),
        None => writeln!(out, "warning none").unwrap(),
    }
    writeln!(out, "quality {}", run.quality.to_json().split_whitespace().collect::<Vec<_>>().join(" ")).unwrap();
    out
}

fn x_label(analytic: &AnalyticProblem) -> &'static str {
    match analytic {
        AnalyticProblem::Annulus(_) => "r",
        AnalyticProblem::Hemisphere(_) => "r (distance from z-axis)",
    }
}

/// Writes `speeds.csv`, `pressures.csv`, `errors.txt`, `speeds.svg`,
/// `pressures.svg` (and `velocities.csv` on request) into `dir`.
pub fn write_solve_outputs(run: &SolveRun, domain: &str, dir: &Path, emit_velocities: bool) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("speeds.csv"), speeds_csv(&run.report))?;
    std::fs::write(dir.join("pressures.csv"), pressures_csv(&run.report))?;
    std::fs::write(dir.join("errors.txt"), errors_txt(run, domain))?;
    if emit_velocities {
        std::fs::write(dir.join("velocities.csv"), velocities_csv(&run.report))?;
    }
    let speed_pts: Vec<_> = run.report.samples.iter().map(|s| (s.speed_r, s.speed_computed, s.speed_exact)).collect();
    let pressure_pts: Vec<_> =
        run.report.samples.iter().map(|s| (s.pressure_r, s.pressure_computed, s.pressure_exact)).collect();
    let title = format!("{} {} ({} triangles)", domain, run.solution.flavor, run.mesh.n_triangles());
    let speeds = ScatterPlot { title: &format!("speed, {title}"), x_label: x_label(&run.analytic), y_label: "speed", points: &speed_pts };
    let pressures =
        ScatterPlot { title: &format!("pressure, {title}"), x_label: x_label(&run.analytic), y_label: "pressure", points: &pressure_pts };
    std::fs::write(dir.join("speeds.svg"), speeds.render())?;
    std::fs::write(dir.join("pressures.svg"), pressures.render())?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub level: usize,
    pub triangles: usize,
    pub h_max: f64,
    pub speed_l2_rel: f64,
    pub speed_max: f64,
    pub pressure_l2_rel: f64,
    pub pressure_max: f64,
    pub solve_seconds: f64,
    pub delaunay: bool,
    pub well_centered: bool,
    pub inflow_total: f64,
    pub net_outflow: f64,
    pub warning: Option<String>,
}

/// Fewest refinement levels a convergence study accepts.
pub const MIN_CONVERGE_LEVELS: usize = 2;

/// Solves on the base mesh and on `config.levels` successive quadrisections.
pub fn run_converge(config: &RunConfig) -> Result<Vec<ConvergenceRow>> {
    config.validate()?;
    if config.levels < MIN_CONVERGE_LEVELS {
        return Err(Error::InvalidSpec(format!(
            "a convergence study needs at least {MIN_CONVERGE_LEVELS} levels, got {}",
            config.levels
        )));
    }
    let analytic = config.domain.analytic(config.s0, config.c0)?;
    let mut mesh = config.base_mesh()?;
    let mut rows = Vec::with_capacity(config.levels + 1);
    for level in 0..=config.levels {
        if level > 0 {
            mesh = crate::meshgen::quadrisect(&mesh, config.domain.projection())?;
        }
        let run = solve_on_mesh(mesh.clone(), analytic, config.method, &config.solver)?;
        rows.push(ConvergenceRow {
            level,
            triangles: run.mesh.n_triangles(),
            h_max: run.metrics.h_max(),
            speed_l2_rel: run.report.speed_l2_rel,
            speed_max: run.report.speed_max,
            pressure_l2_rel: run.report.pressure_l2_rel,
            pressure_max: run.report.pressure_max,
            solve_seconds: if config.timing { run.solve_seconds } else { 0.0 },
            delaunay: run.quality.delaunay,
            well_centered: run.quality.well_centered,
            inflow_total: run.conservation.inflow_total,
            net_outflow: run.conservation.net_outflow,
            warning: run.solution.warning.as_ref().map(|w| w.to_string()),
        });
    }
    Ok(rows)
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("level,triangles,h_max,speed_l2_rel,speed_max,pressure_l2_rel,pressure_max,solve_seconds\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.level,
            r.triangles,
            fmt_f64(r.h_max),
            fmt_f64(r.speed_l2_rel),
            fmt_f64(r.speed_max),
            fmt_f64(r.pressure_l2_rel),
            fmt_f64(r.pressure_max),
            fmt_f64(r.solve_seconds)
        )
        .unwrap();
    }
    out
}

/// Ratios `error[l-1] / error[l]` for consecutive levels.
pub fn reduction_factors(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| w[0] / w[1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_are_capped() {
        let mut cfg = RunConfig::new(Domain::Annulus(AnnulusSpec::default()), HodgeFlavor::Dec, "out");
        cfg.levels = MAX_LEVELS + 1;
        assert!(matches!(cfg.validate(), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn inflow_loop_is_the_hole() {
        let domain = Domain::Hemisphere(HemisphereSpec::default());
        let mesh = domain.base_mesh().unwrap();
        let analytic = domain.analytic(1.0, 0.0).unwrap();
        assert_eq!(inflow_loop(&mesh, &analytic), Some(0));
    }

    #[test]
    fn convergence_csv_layout() {
        let row = ConvergenceRow {
            level: 0,
            triangles: 192,
            h_max: 0.5,
            speed_l2_rel: 0.1,
            speed_max: 0.2,
            pressure_l2_rel: 0.3,
            pressure_max: 0.4,
            solve_seconds: 0.0,
            delaunay: true,
            well_centered: true,
            inflow_total: 1.0,
            net_outflow: 0.0,
            warning: None,
        };
        assert_eq!(
            convergence_csv(&[row]),
            "level,triangles,h_max,speed_l2_rel,speed_max,pressure_l2_rel,pressure_max,solve_seconds\n0,192,0.5,0.1,0.2,0.3,0.4,0\n"
        );
        assert_eq!(reduction_factors(&[4.0, 2.0, 0.5]), vec![2.0, 4.0]);
    }
}
