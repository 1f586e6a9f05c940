use std::path::Path;
use std::process::{Command, Output};

use surface_darcy::experiment::{run_solve, Domain, RunConfig};
use surface_darcy::mesh_io::read_mesh;
use surface_darcy::meshgen::AnnulusSpec;
use surface_darcy::HodgeFlavor;

fn darcy(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_darcy")).args(args).arg("-o").arg(out).output().unwrap()
}

fn csv(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn field(errors: &str, key: &str) -> f64 {
    errors
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("missing {key}"))
        .parse()
        .unwrap()
}

#[test]
fn mesh_writes_mesh_and_quality_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("annulus.txt");
    let out = darcy(&["mesh", "annulus"], &path);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("120 312 192"));
    assert_eq!(read_mesh(&path).unwrap().n_triangles(), 192);
    let quality = std::fs::read_to_string(dir.path().join("annulus.quality.json")).unwrap();
    assert!(quality.contains("\"well_centered\": true"));

    let path = dir.path().join("cap.txt");
    let out = darcy(&["mesh", "hemisphere", "--lat", "3", "--lon", "12"], &path);
    assert!(out.status.success());
    assert_eq!(read_mesh(&path).unwrap().n_triangles(), 72);
}

#[test]
fn solve_writes_consistent_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = darcy(&["solve", "--domain", "annulus", "--method", "whitney", "--emit-velocities"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let speeds = csv(&dir.path().join("speeds.csv"));
    let pressures = csv(&dir.path().join("pressures.csv"));
    let velocities = csv(&dir.path().join("velocities.csv"));
    assert_eq!(speeds[0], ["r", "speed_computed", "speed_exact"]);
    assert_eq!(pressures[0], ["r", "p_computed", "p_exact"]);
    assert_eq!(velocities[0], ["x", "y", "z", "vx", "vy", "vz"]);
    for table in [&speeds, &pressures, &velocities] {
        assert_eq!(table.len(), 193);
    }

    // Same code path as the library, so the norms agree to the last bit.
    let cfg = RunConfig::new(Domain::Annulus(AnnulusSpec::default()), HodgeFlavor::Whitney, dir.path());
    let run = run_solve(&cfg).unwrap();
    let errors = std::fs::read_to_string(dir.path().join("errors.txt")).unwrap();
    assert_eq!(field(&errors, "speed_l2_rel"), run.report.speed_l2_rel);
    assert_eq!(field(&errors, "speed_max"), run.report.speed_max);
    assert_eq!(field(&errors, "pressure_l2_rel"), run.report.pressure_l2_rel);
    assert_eq!(field(&errors, "pressure_max"), run.report.pressure_max);
    assert!(errors.contains("quality {"));

    let svg = std::fs::read_to_string(dir.path().join("speeds.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 192);
    assert!(!svg.contains("href"));
}

#[test]
fn zero_inflow_writes_zero_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = darcy(&["solve", "--s0", "0", "--method", "dec"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for (file, col) in [("speeds.csv", 1), ("pressures.csv", 1)] {
        let rows = csv(&dir.path().join(file));
        assert!(rows[1..].iter().all(|r| r[col].parse::<f64>().unwrap() == 0.0));
    }
}

#[test]
fn solve_reads_a_mesh_file() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = dir.path().join("m.txt");
    assert!(darcy(&["mesh", "hemisphere"], &mesh).status.success());
    let a = darcy(&["solve", "--domain", "hemisphere", "--mesh", mesh.to_str().unwrap()], &dir.path().join("a"));
    let b = darcy(&["solve", "--domain", "hemisphere"], &dir.path().join("b"));
    assert!(a.status.success() && b.status.success());
    let read = |d: &str| std::fs::read(dir.path().join(d).join("speeds.csv")).unwrap();
    assert_eq!(read("a"), read("b"));
}

#[test]
fn converge_writes_one_row_per_level() {
    let dir = tempfile::tempdir().unwrap();
    let out = darcy(&["converge", "--domain", "hemisphere", "--levels", "2", "--no-timing"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv(&dir.path().join("convergence.csv"));
    assert_eq!(
        rows[0],
        ["level", "triangles", "h_max", "speed_l2_rel", "speed_max", "pressure_l2_rel", "pressure_max", "solve_seconds"]
    );
    let triangles: Vec<usize> = rows[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(triangles, [240, 960, 3840]);
    assert!(rows[1..].iter().all(|r| r[7] == "0"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let invalid = darcy(&["solve", "--r0", "3", "--r1", "2"], dir.path());
    assert_eq!(invalid.status.code(), Some(1));
    let too_few = darcy(&["converge", "--levels", "1"], dir.path());
    assert_eq!(too_few.status.code(), Some(1));
    let missing = darcy(&["solve", "--mesh", "/nonexistent/mesh.txt"], dir.path());
    assert_eq!(missing.status.code(), Some(1));
    let stalled = darcy(&["solve", "--solver", "minres", "--max-iterations", "3"], dir.path());
    assert_eq!(stalled.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&stalled.stderr).contains("error"));
}
