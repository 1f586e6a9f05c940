// Edge cochains, Whitney interpolation and the flux-to-velocity rotation.
// A constant 1-form is reproduced exactly, and the exact radial flux on the
// annulus turns into an outward velocity field.
//
//     cargo run --example whitney_velocity

use surface_darcy::analytic::{AnalyticProblem, AnnulusProblem};
use surface_darcy::geometry::DualMetrics;
use surface_darcy::meshgen::{annulus_mesh, AnnulusSpec};
use surface_darcy::vec3;
use surface_darcy::whitney::{velocity_from_flux, whitney_interpolate, Cochain1};

fn main() -> surface_darcy::Result<()> {
    let sc = annulus_mesh(&AnnulusSpec::default())?;
    let metrics = DualMetrics::compute(&sc)?;

    // Integrate the constant form 2 dx - dy along every edge.
    let w = [2.0, -1.0, 0.0];
    let c = Cochain1::from_edge_integral(&sc, |a, b| vec3::dot(w, vec3::sub(b, a)));
    let mut worst: f64 = 0.0;
    for t in 0..sc.n_triangles() {
        for bary in [[1.0 / 3.0; 3], [0.7, 0.2, 0.1], [0.0, 0.5, 0.5]] {
            let v = whitney_interpolate(&sc, &c, t, bary)?;
            worst = worst.max(vec3::norm(vec3::sub(v, w)));
        }
    }
    println!("constant form reproduced, max deviation {worst:.2e}");

    let exact = AnalyticProblem::Annulus(AnnulusProblem::new(1.0, 2.0, 1.0)?);
    let flux = Cochain1::from_edge_integral(&sc, |a, b| exact.exact_edge_flux(a, b).unwrap());
    let velocity = velocity_from_flux(&sc, &metrics, &flux)?;
    for t in (0..sc.n_triangles()).step_by(48) {
        let p = metrics.barycenter[t];
        let v = velocity[t];
        let radial = vec3::dot(v, vec3::normalize([p[0], p[1], 0.0])) / vec3::norm(v);
        println!(
            "triangle {t:3}: r={:.3} |v|={:.4} exact={:.4} cos(angle to radial)={radial:.5}",
            p[0].hypot(p[1]),
            vec3::norm(v),
            exact.speed_at(p)
        );
    }
    Ok(())
}
