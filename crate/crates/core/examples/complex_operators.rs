// Incidence matrices of a small oriented surface: a unit square with a
// square hole, split into eight triangles.
//
//     cargo run --example complex_operators

use surface_darcy::complex::SimplicialSurface;
use surface_darcy::linalg::CsrMatrix;

fn print_matrix(name: &str, m: &CsrMatrix) {
    println!("{name} ({} x {}):", m.nrows(), m.ncols());
    for row in m.to_dense() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        println!("  [{}]", cells.join(""));
    }
}

fn main() -> surface_darcy::Result<()> {
    let outer = [[-2.0, -2.0, 0.0], [2.0, -2.0, 0.0], [2.0, 2.0, 0.0], [-2.0, 2.0, 0.0]];
    let inner = [[-1.0, -1.0, 0.0], [1.0, -1.0, 0.0], [1.0, 1.0, 0.0], [-1.0, 1.0, 0.0]];
    let vertices: Vec<_> = inner.iter().chain(outer.iter()).copied().collect();
    let mut triangles = Vec::new();
    for k in 0..4 {
        let (i0, i1) = (k, (k + 1) % 4);
        let (o0, o1) = (4 + k, 4 + (k + 1) % 4);
        triangles.push([i0, o0, o1]);
        triangles.push([i0, o1, i1]);
    }
    let sc = SimplicialSurface::new(vertices, triangles)?;
    println!(
        "V={} E={} F={} euler={}",
        sc.n_vertices(),
        sc.n_edges(),
        sc.n_triangles(),
        sc.euler_characteristic()
    );
    for (i, [a, b]) in sc.edges().iter().enumerate() {
        let kind = if sc.is_boundary_edge(i) { "boundary" } else { "interior" };
        println!("edge {i}: {a} -> {b} ({kind})");
    }

    let d0 = sc.coboundary_0();
    let d1 = sc.coboundary_1();
    print_matrix("d1", &d1);
    let dd = d1.matmul(&d0)?;
    println!("d1 d0 has {} nonzeros", dd.nnz());
    assert_eq!(dd.nnz(), 0);
    assert_eq!(d1.to_dense(), sc.boundary_2().transpose().to_dense());

    for (i, lp) in sc.boundary_loops().iter().enumerate() {
        println!("loop {i}: vertices {:?}", lp.vertices);
    }
    Ok(())
}
