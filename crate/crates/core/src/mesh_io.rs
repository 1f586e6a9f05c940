//! Plain-text triangle mesh format.
//!
//! ```text
//! # comment lines start with '#', blank lines are ignored
//! 4 5 2          optional header: vertex count, edge count (ignored), triangle count
//! v 0 0 0        one line per vertex: x y z
//! v 1 0 0
//! v 1 1 0
//! v 0 1 0
//! t 0 1 2        one line per triangle: 0-based vertex indices, in orientation order
//! t 0 2 3
//! ```
//!
//! Coordinates are written with Rust's shortest round-trip `f64` formatting
//! (scientific notation below 1e-4 or from 1e15 in magnitude), so reading a written file and writing it again reproduces it byte for byte.
//! When a header is present its vertex and triangle counts must match the body.

use std::fmt::Write as _;
use std::path::Path;

use crate::complex::SimplicialSurface;
use crate::error::{Error, Result};
use crate::vec3::Point3;

/// Raw vertex and triangle lists as read from a mesh file.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshData {
    pub vertices: Vec<Point3>,
    pub triangles: Vec<[usize; 3]>,
}

pub fn parse_mesh(text: &str) -> Result<MeshData> {
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    let mut header: Option<(usize, usize, usize)> = None;
    let mut seen_body = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        match head {
            "v" => {
                if !triangles.is_empty() {
                    return Err(err("vertex after triangle lines".into()));
                }
                let coords = parse_n::<f64>(&rest, 3).map_err(err)?;
                if coords.iter().any(|c| !c.is_finite()) {
                    return Err(err("non-finite coordinate".into()));
                }
                vertices.push([coords[0], coords[1], coords[2]]);
                seen_body = true;
            }
            "t" => {
                let idx = parse_n::<usize>(&rest, 3).map_err(err)?;
                triangles.push([idx[0], idx[1], idx[2]]);
                seen_body = true;
            }
            _ if !seen_body && header.is_none() => {
                let mut all = vec![head];
                all.extend(&rest);
                let counts = parse_n::<usize>(&all, 3)
                    .map_err(|m| err(format!("expected 'v', 't' or a 'V E F' header: {m}")))?;
                header = Some((counts[0], counts[1], counts[2]));
            }
            other => return Err(err(format!("unknown record '{other}'"))),
        }
    }

    if let Some((nv, _, nf)) = header {
        if nv != vertices.len() || nf != triangles.len() {
            return Err(Error::Parse {
                line: 1,
                msg: format!(
                    "header announces {nv} vertices and {nf} triangles, body has {} and {}",
                    vertices.len(),
                    triangles.len()
                ),
            });
        }
    }
    Ok(MeshData { vertices, triangles })
}

fn parse_n<T: std::str::FromStr>(tokens: &[&str], n: usize) -> std::result::Result<Vec<T>, String> {
    if tokens.len() != n {
        return Err(format!("expected {n} values, found {}", tokens.len()));
    }
    tokens
        .iter()
        .map(|t| t.parse::<T>().map_err(|_| format!("cannot parse '{t}'")))
        .collect()
}

/// Shortest round-trip text for `x`, switching to scientific notation for
/// very small or very large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

/// Serializes a complex, header included.
pub fn format_mesh(sc: &SimplicialSurface) -> String {
    let mut out = String::with_capacity(32 * (sc.n_vertices() + sc.n_triangles()));
    writeln!(out, "{} {} {}", sc.n_vertices(), sc.n_edges(), sc.n_triangles()).unwrap();
    for &[x, y, z] in sc.vertices() {
        writeln!(out, "v {} {} {}", fmt_f64(x), fmt_f64(y), fmt_f64(z)).unwrap();
    }
    for [a, b, c] in sc.triangles() {
        writeln!(out, "t {a} {b} {c}").unwrap();
    }
    out
}

pub fn read_mesh(path: impl AsRef<Path>) -> Result<SimplicialSurface> {
    let text = std::fs::read_to_string(path)?;
    let data = parse_mesh(&text)?;
    SimplicialSurface::new(data.vertices, data.triangles)
}

pub fn write_mesh(path: impl AsRef<Path>, sc: &SimplicialSurface) -> Result<()> {
    std::fs::write(path, format_mesh(sc))?;
    Ok(())
}
