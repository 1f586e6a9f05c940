// The two Hodge stars on edges: the diagonal circumcentric (DEC) star and
// the Whitney mass matrix, on two equilateral triangles sharing an edge and
// on a pair whose shared edge fails the Delaunay condition.
//
//     cargo run --example hodge_stars

use surface_darcy::complex::SimplicialSurface;
use surface_darcy::geometry::DualMetrics;
use surface_darcy::hodge::{dec_hodge_star_1, whitney_local_mass, whitney_mass_matrix_1};

fn show(label: &str, sc: &SimplicialSurface) -> surface_darcy::Result<()> {
    let metrics = DualMetrics::compute(sc)?;
    let dec = dec_hodge_star_1(sc, &metrics);
    let whitney = whitney_mass_matrix_1(sc, &metrics)?;
    let shared = sc.interior_edges()[0];
    println!("{label}");
    println!("  shared edge {shared}: dual length {:.6}", metrics.dual_edge_length[shared]);
    println!("  DEC star diagonal: {:?}", dec.matrix.diagonal());
    println!("  Whitney mass diagonal: {:?}", whitney.matrix.diagonal());
    match &dec.warning {
        Some(w) => println!("  warning: {w}"),
        None => println!("  DEC star is positive"),
    }
    Ok(())
}

fn main() -> surface_darcy::Result<()> {
    let h = 3f64.sqrt() / 2.0;
    let equilateral = SimplicialSurface::new(
        vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, h, 0.0], [0.5, -h, 0.0]],
        vec![[0, 1, 2], [1, 0, 3]],
    )?;
    show("glued equilateral pair", &equilateral)?;
    println!("  expected shared entry 1/sqrt(3) = {:.6}", 1.0 / 3f64.sqrt());

    let flat = SimplicialSurface::new(
        vec![[0.0, 0.0, 0.0], [4.0, 0.0, 0.0], [2.0, 0.5, 0.0], [2.0, -0.5, 0.0]],
        vec![[0, 1, 2], [1, 0, 3]],
    )?;
    show("flat pair (shared edge opposite two obtuse angles)", &flat)?;

    let local = whitney_local_mass([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
    println!("Whitney local mass on the unit right triangle:");
    for row in local {
        println!("  {row:?}");
    }
    Ok(())
}
