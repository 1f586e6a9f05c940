// Generate, refine, save and reload meshes, and inspect their quality.
//
//     cargo run --example mesh_io

use surface_darcy::geometry::{quality_report, DualMetrics};
use surface_darcy::mesh_io::{format_mesh, parse_mesh, read_mesh, write_mesh};
use surface_darcy::meshgen::{annulus_mesh, hemisphere_mesh, refine, AnnulusSpec, HemisphereSpec, Projection};

fn main() -> surface_darcy::Result<()> {
    let annulus = annulus_mesh(&AnnulusSpec { r0: 1.0, r1: 3.0, n_rings: 2, n_sectors: 8 })?;
    let text = format_mesh(&annulus);
    println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("...");
    let parsed = parse_mesh(&text)?;
    println!("parsed {} vertices and {} triangles", parsed.vertices.len(), parsed.triangles.len());

    let path = std::env::temp_dir().join("surface-darcy-hemisphere.txt");
    let hemisphere = refine(&hemisphere_mesh(&HemisphereSpec::default())?, 1, Projection::UnitSphere)?;
    write_mesh(&path, &hemisphere)?;
    let reloaded = read_mesh(&path)?;
    assert_eq!(format_mesh(&reloaded), format_mesh(&hemisphere));
    println!("round trip through {} is exact", path.display());

    for (name, sc) in [("annulus", &annulus), ("hemisphere", &reloaded)] {
        let metrics = DualMetrics::compute(sc)?;
        print!("{name}: {}", quality_report(sc, &metrics).to_json());
    }
    Ok(())
}
