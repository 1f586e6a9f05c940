//! Mixed discrete-exterior-calculus solvers for Darcy flow on triangulated
//! surfaces.
//!
//! Flux is an edge cochain, pressure a triangle cochain, and the method is
//! selected by the Hodge star on edges: the diagonal circumcentric star
//! ([`HodgeFlavor::Dec`]) or the Whitney 1-form mass matrix
//! ([`HodgeFlavor::Whitney`]). Everything else is shared.
//!
//! ```
//! use surface_darcy::prelude::*;
//!
//! let mesh = annulus_mesh(&AnnulusSpec::default())?;
//! let metrics = DualMetrics::compute(&mesh)?;
//! let exact = AnalyticProblem::Annulus(AnnulusProblem::new(1.0, 2.0, 1.0)?);
//! let problem = DarcyProblem::from_analytic(&mesh, &metrics, HodgeFlavor::Whitney, &exact)?;
//! let solution = solve(&problem, &SolverOptions::default())?;
//! let report = solution.error_report(&mesh, &metrics, &exact)?;
//! assert!(report.speed_l2_rel < 0.1);
//! # Ok::<(), surface_darcy::Error>(())
//! ```

// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod complex;
pub mod darcy;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod hodge;
pub mod linalg;
pub mod mesh_io;
pub mod meshgen;
pub mod svg;
pub mod vec3;
pub mod whitney;

pub use error::{Error, Result};
pub use hodge::HodgeFlavor;

pub mod prelude {
    pub use crate::analytic::{AnalyticProblem, AnnulusProblem, HemisphereProblem};
    pub use crate::complex::{BoundaryLoop, SimplicialSurface};
    pub use crate::darcy::{assemble, error_report, solve, DarcyProblem, DarcySolution, ErrorReport};
    pub use crate::error::{Error, Result};
    pub use crate::geometry::{quality_report, DualMetrics, QualityReport};
    pub use crate::hodge::{dec_hodge_star_1, whitney_mass_matrix_1, HodgeFlavor, HodgeStar1};
    pub use crate::linalg::{CsrMatrix, SolverOptions, Strategy};
    pub use crate::meshgen::{annulus_mesh, hemisphere_mesh, quadrisect, refine, AnnulusSpec, HemisphereSpec, Projection};
    pub use crate::whitney::{velocity_from_flux, whitney_interpolate, Cochain1};
}
