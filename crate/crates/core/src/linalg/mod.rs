//! Minimal sparse linear algebra used by the mixed solvers.

mod solve;
mod sparse;

pub use solve::{
    minres, solve_direct, solve_symmetric_indefinite, LinearSolution, SolveMethod, SolveStats,
    SolverOptions, Strategy,
};
pub use sparse::{block_assemble, dot, norm2, norm_inf, saddle_point, CsrMatrix};
