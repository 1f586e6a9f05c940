// The reduced Darcy saddle-point system solved by sparse LU and by
// preconditioned MINRES.
//
//     cargo run --release --example saddle_point_solvers

use surface_darcy::analytic::{AnalyticProblem, AnnulusProblem};
use surface_darcy::darcy::{assemble, DarcyProblem};
use surface_darcy::geometry::DualMetrics;
use surface_darcy::linalg::{minres, norm_inf, solve_direct};
use surface_darcy::meshgen::{annulus_mesh, AnnulusSpec};
use surface_darcy::HodgeFlavor;

fn main() -> surface_darcy::Result<()> {
    let sc = annulus_mesh(&AnnulusSpec::default())?;
    let metrics = DualMetrics::compute(&sc)?;
    let exact = AnalyticProblem::Annulus(AnnulusProblem::new(1.0, 2.0, 1.0)?);
    let problem = DarcyProblem::from_analytic(&sc, &metrics, HodgeFlavor::Whitney, &exact)?;
    let asm = assemble(&problem)?;
    println!(
        "{} unknowns ({} fluxes, {} pressures), {} nonzeros, asymmetry {:.1e}",
        asm.dofs.n_unknowns(),
        asm.dofs.interior_edges.len(),
        asm.dofs.free_triangles.len(),
        asm.matrix.nnz(),
        asm.matrix.max_asymmetry()
    );

    let lu = solve_direct(&asm.matrix, &asm.rhs, 1e-10)?;
    println!("sparse LU: residual {:.2e} after {} refinement sweeps", lu.residual, lu.stats.iterations);
    let kr = minres(&asm.matrix, &asm.rhs, 1e-12, 20_000)?;
    println!("MINRES:    residual {:.2e} after {} iterations", kr.residual, kr.stats.iterations);
    let diff: Vec<f64> = lu.x.iter().zip(&kr.x).map(|(a, b)| a - b).collect();
    println!("max difference {:.2e}", norm_inf(&diff));
    Ok(())
}
