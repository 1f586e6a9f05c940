// Radial flow through the planar annulus 1 < r < 2 with both Hodge stars.
// Writes speeds.csv, pressures.csv, errors.txt and SVG plots per method.
//
//     cargo run --release --example annulus_flow [output-dir]

use std::path::PathBuf;

use surface_darcy::experiment::{run_solve, write_solve_outputs, Domain, RunConfig};
use surface_darcy::meshgen::AnnulusSpec;
use surface_darcy::HodgeFlavor;

fn main() -> surface_darcy::Result<()> {
    let out = std::env::var_os("DARCY_EXAMPLE_OUT")
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("surface-darcy"))
        .join("annulus_flow");
    for method in [HodgeFlavor::Dec, HodgeFlavor::Whitney] {
        let mut cfg = RunConfig::new(Domain::Annulus(AnnulusSpec::default()), method, out.join(method.to_string()));
        cfg.levels = 1;
        cfg.emit_velocities = true;
        let run = run_solve(&cfg)?;
        write_solve_outputs(&run, "annulus", &cfg.output_dir, true)?;
        println!(
            "{method:8} triangles={} speed_l2_rel={:.4e} pressure_l2_rel={:.4e} inflow={:.12} -> {}",
            run.mesh.n_triangles(),
            run.report.speed_l2_rel,
            run.report.pressure_l2_rel,
            run.conservation.inflow_total,
            cfg.output_dir.display()
        );
    }
    println!("expected inflow 2*pi = {:.12}", 2.0 * std::f64::consts::PI);
    Ok(())
}
