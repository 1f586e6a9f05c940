use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use surface_darcy::experiment::{self, Domain, RunConfig};
use surface_darcy::geometry::{quality_report, DualMetrics};
use surface_darcy::linalg::{SolverOptions, Strategy};
use surface_darcy::meshgen::{annulus_mesh, hemisphere_mesh, AnnulusSpec, HemisphereSpec};
use surface_darcy::{mesh_io, Error, HodgeFlavor};

#[derive(Parser)]
#[command(name = "darcy", version, about = "Mixed DEC / Whitney Darcy flow on surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a mesh and a quality report next to it.
    Mesh {
        #[command(subcommand)]
        domain: MeshDomain,
        #[arg(long, short, global = true, default_value = "mesh.txt")]
        output: PathBuf,
    },
    /// Solve once and write samples, errors and plots.
    Solve(RunArgs),
    /// Solve on successive refinements and write convergence.csv.
    Converge(RunArgs),
}

#[derive(Subcommand)]
enum MeshDomain {
    Annulus(AnnulusArgs),
    Hemisphere(HemisphereArgs),
}

#[derive(Args, Clone)]
struct AnnulusArgs {
    #[arg(long, default_value_t = 1.0)]
    r0: f64,
    #[arg(long, default_value_t = 2.0)]
    r1: f64,
    #[arg(long, default_value_t = 4)]
    rings: usize,
    #[arg(long, default_value_t = 24)]
    sectors: usize,
}

#[derive(Args, Clone)]
struct HemisphereArgs {
    /// Colatitude of the inner boundary, radians.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_6)]
    theta0: f64,
    #[arg(long, default_value_t = 4)]
    lat: usize,
    #[arg(long, default_value_t = 30)]
    lon: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainKind {
    Annulus,
    Hemisphere,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dec,
    Whitney,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    /// Sparse LU, falling back to MINRES if the factorization breaks down.
    Auto,
    Direct,
    Minres,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "annulus")]
    domain: DomainKind,
    #[arg(long, value_enum, default_value = "whitney")]
    method: Method,
    /// Base mesh file; overrides the generated mesh.
    #[arg(long)]
    mesh: Option<PathBuf>,
    /// Number of quadrisection levels [solve: 0, converge: 4].
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long, short, default_value = "out")]
    output: PathBuf,
    /// Additive pressure constant of the exact solution.
    #[arg(long, default_value_t = 0.0)]
    c0: f64,
    /// Inflow speed at the inner boundary.
    #[arg(long, default_value_t = 1.0)]
    s0: f64,
    #[arg(long)]
    emit_velocities: bool,
    /// Write 0 in the solve_seconds column so output is reproducible.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, value_enum, default_value = "auto")]
    solver: Solver,
    /// Relative residual target of the linear solve.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// MINRES iteration cap.
    #[arg(long, default_value_t = 20_000)]
    max_iterations: usize,
    #[command(flatten)]
    annulus: AnnulusArgs,
    #[command(flatten)]
    hemisphere: HemisphereArgs,
}

impl RunArgs {
    fn config(&self, default_levels: usize) -> RunConfig {
        let domain = match self.domain {
            DomainKind::Annulus => Domain::Annulus(AnnulusSpec {
                r0: self.annulus.r0,
                r1: self.annulus.r1,
                n_rings: self.annulus.rings,
                n_sectors: self.annulus.sectors,
            }),
            DomainKind::Hemisphere => Domain::Hemisphere(HemisphereSpec {
                theta0: self.hemisphere.theta0,
                n_lat: self.hemisphere.lat,
                n_lon: self.hemisphere.lon,
            }),
        };
        let method = match self.method {
            Method::Dec => HodgeFlavor::Dec,
            Method::Whitney => HodgeFlavor::Whitney,
        };
        let mut cfg = RunConfig::new(domain, method, &self.output);
        cfg.mesh_file = self.mesh.clone();
        cfg.levels = self.levels.unwrap_or(default_levels);
        cfg.c0 = self.c0;
        cfg.s0 = self.s0;
        cfg.emit_velocities = self.emit_velocities;
        cfg.timing = !self.no_timing;
        cfg.solver = SolverOptions {
            strategy: match self.solver {
                Solver::Auto => Strategy::Auto,
                Solver::Direct => Strategy::Direct,
                Solver::Minres => Strategy::Minres,
            },
            tol: self.tol,
            max_iterations: self.max_iterations,
        };
        cfg
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Mesh { domain, output } => {
            let mesh = match domain {
                MeshDomain::Annulus(a) => {
                    annulus_mesh(&AnnulusSpec { r0: a.r0, r1: a.r1, n_rings: a.rings, n_sectors: a.sectors })?
                }
                MeshDomain::Hemisphere(h) => {
                    hemisphere_mesh(&HemisphereSpec { theta0: h.theta0, n_lat: h.lat, n_lon: h.lon })?
                }
            };
            let metrics = DualMetrics::compute(&mesh)?;
            mesh_io::write_mesh(&output, &mesh)?;
            std::fs::write(output.with_extension("quality.json"), quality_report(&mesh, &metrics).to_json())?;
            println!("{} vertices, {} edges, {} triangles -> {}", mesh.n_vertices(), mesh.n_edges(), mesh.n_triangles(), output.display());
        }
        Command::Solve(args) => {
            let cfg = args.config(0);
            let run = experiment::run_solve(&cfg)?;
            experiment::write_solve_outputs(&run, cfg.domain.name(), &cfg.output_dir, cfg.emit_velocities)?;
            if let Some(w) = &run.solution.warning {
                eprintln!("warning: {w}");
            }
            print!("{}", experiment::errors_txt(&run, cfg.domain.name()));
        }
        Command::Converge(args) => {
            let cfg = args.config(4);
            let rows = experiment::run_converge(&cfg)?;
            for row in &rows {
                if let Some(w) = &row.warning {
                    eprintln!("warning: level {}: {w}", row.level);
                }
            }
            std::fs::create_dir_all(&cfg.output_dir)?;
            let csv = experiment::convergence_csv(&rows);
            std::fs::write(cfg.output_dir.join("convergence.csv"), &csv)?;
            print!("{csv}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::SingularSystem(_) | Error::MaxIterations { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
