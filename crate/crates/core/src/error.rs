use thiserror::Error;

/// Errors raised by mesh construction, assembly and the linear solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("triangle {triangle} references vertex {vertex}, but the mesh has {n_vertices} vertices")]
    IndexOutOfRange {
        triangle: usize,
        vertex: usize,
        n_vertices: usize,
    },
    #[error("triangle {0} is degenerate")]
    DegenerateTriangle(usize),
    #[error("edge ({0}, {1}) is shared by more than two triangles")]
    NonManifold(usize, usize),
    #[error("edge ({0}, {1}) is traversed in the same direction by both incident triangles")]
    NonOrientable(usize, usize),
    #[error("point {0} is at the origin and cannot be projected to the sphere")]
    OriginPoint(usize),
    #[error("invalid mesh specification: {0}")]
    InvalidSpec(String),
    #[error("barycentric coordinates {0:?} are not a convex combination")]
    InvalidBarycentric([f64; 3]),
    #[error("coordinate {value} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { value: f64, lo: f64, hi: f64 },
    #[error("edge endpoints both lie on the symmetry axis; azimuth is undefined")]
    EdgeThroughAxis,
    #[error("edge subtends an azimuth of {0} rad, at least pi")]
    EdgeTooLong(f64),
    #[error("boundary fluxes do not balance: net outflow {net} vs total {total}")]
    IncompatibleBc { net: f64, total: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system is singular: {0}")]
    SingularSystem(String),
    #[error("iterative solver stopped after {iterations} iterations at relative residual {residual:e}")]
    MaxIterations { iterations: usize, residual: f64 },
    #[error("mesh file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
