// Error against mesh size under repeated quadrisection, for both domains
// and both Hodge stars, with per-level reduction factors.
//
//     cargo run --release --example convergence_study

use surface_darcy::experiment::{reduction_factors, run_converge, Domain, RunConfig};
use surface_darcy::meshgen::{AnnulusSpec, HemisphereSpec};
use surface_darcy::HodgeFlavor;

fn main() -> surface_darcy::Result<()> {
    let cases = [
        (Domain::Annulus(AnnulusSpec::default()), 3),
        (Domain::Hemisphere(HemisphereSpec::default()), 2),
    ];
    for (domain, levels) in cases {
        for method in [HodgeFlavor::Dec, HodgeFlavor::Whitney] {
            let mut cfg = RunConfig::new(domain, method, std::env::temp_dir());
            cfg.levels = levels;
            let rows = run_converge(&cfg)?;
            println!("{} / {method}", domain.name());
            println!("  level triangles     h_max   speed_l2  pressure_l2");
            for r in &rows {
                println!(
                    "  {:5} {:9} {:9.5} {:10.3e} {:12.3e}",
                    r.level, r.triangles, r.h_max, r.speed_l2_rel, r.pressure_l2_rel
                );
            }
            let speed: Vec<f64> = rows.iter().map(|r| r.speed_l2_rel).collect();
            let pressure: Vec<f64> = rows.iter().map(|r| r.pressure_l2_rel).collect();
            println!("  speed factors    {:.3?}", reduction_factors(&speed));
            println!("  pressure factors {:.3?}", reduction_factors(&pressure));
        }
    }
    Ok(())
}
