// Flow from a polar cap hole down to the equator of the unit hemisphere.
// The lat/lon mesh has cocircular quads, so the DEC run carries a warning
// and the quality report shows which edges have a vanishing dual.
//
//     cargo run --release --example hemisphere_flow

use surface_darcy::experiment::{run_solve, Domain, RunConfig};
use surface_darcy::meshgen::HemisphereSpec;
use surface_darcy::HodgeFlavor;

fn main() -> surface_darcy::Result<()> {
    let domain = Domain::Hemisphere(HemisphereSpec::default());
    for method in [HodgeFlavor::Whitney, HodgeFlavor::Dec] {
        let mut cfg = RunConfig::new(domain, method, std::env::temp_dir());
        cfg.levels = 1;
        let run = run_solve(&cfg)?;
        println!(
            "{method:8} triangles={} speed_l2_rel={:.4e} pressure_l2_rel={:.4e}",
            run.mesh.n_triangles(),
            run.report.speed_l2_rel,
            run.report.pressure_l2_rel
        );
        println!(
            "         inflow={:.12} (2*pi*sin(theta0) = {:.12})",
            run.conservation.inflow_total,
            run.analytic.total_inflow()
        );
        if let Some(w) = &run.solution.warning {
            println!("         warning: {w}");
        }
        println!("         quality: delaunay={} well_centered={}", run.quality.delaunay, run.quality.well_centered);
    }
    Ok(())
}
