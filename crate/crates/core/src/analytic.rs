//! Closed-form radial Darcy flow on the planar annulus and on the annular
//! hemisphere, with exact edge fluxes.
//!
//! Both flows carry the flux form `sigma = K dphi` with `K = S0 r0` (annulus)
//! or `K = S0 sin(theta0)` (hemisphere). `sigma` is closed, so its integral
//! along any segment is `K` times the azimuth swept, independent of the path.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::vec3::Point3;

/// Slack for the domain checks, relative to the interval end points.
const DOMAIN_TOL: f64 = 1e-12;

fn check_domain(value: f64, lo: f64, hi: f64) -> Result<()> {
    let slack = DOMAIN_TOL * hi.abs().max(1.0);
    if value.is_finite() && value >= lo - slack && value <= hi + slack {
        Ok(())
    } else {
        Err(Error::OutOfDomain { value, lo, hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusProblem {
    pub r0: f64,
    pub r1: f64,
    /// Inflow speed at the inner circle; positive means outward flow.
    pub s0: f64,
    /// Pressure on the inner circle.
    pub c0: f64,
}

impl AnnulusProblem {
    pub fn new(r0: f64, r1: f64, s0: f64) -> Result<Self> {
        if !(r0 > 0.0 && r1 > r0) {
            return Err(Error::InvalidSpec(format!("need 0 < r0 < r1, got {r0}, {r1}")));
        }
        Ok(Self { r0, r1, s0, c0: 0.0 })
    }

    pub fn flux_constant(&self) -> f64 {
        self.s0 * self.r0
    }

    /// Additive constant in `p(r) = -S0 r0 ln r + C`.
    pub fn pressure_constant(&self) -> f64 {
        self.c0 + self.s0 * self.r0 * self.r0.ln()
    }

    pub fn speed(&self, r: f64) -> Result<f64> {
        check_domain(r, self.r0, self.r1)?;
        Ok(self.speed_unchecked(r))
    }

    pub fn pressure(&self, r: f64) -> Result<f64> {
        check_domain(r, self.r0, self.r1)?;
        Ok(self.pressure_unchecked(r))
    }

    /// The closed form is valid on the whole punctured plane; sample points
    /// of a polygonal mesh may sit slightly outside `[r0, r1]`.
    pub fn speed_unchecked(&self, r: f64) -> f64 {
        self.s0 * self.r0 / r
    }

    pub fn pressure_unchecked(&self, r: f64) -> f64 {
        -self.s0 * self.r0 * r.ln() + self.pressure_constant()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HemisphereProblem {
    /// Colatitude of the hole boundary.
    pub theta0: f64,
    pub s0: f64,
    /// Pressure on the hole boundary.
    pub c0: f64,
}

impl HemisphereProblem {
    pub fn new(theta0: f64, s0: f64) -> Result<Self> {
        if !(theta0 > 0.0 && theta0 < FRAC_PI_2) {
            return Err(Error::InvalidSpec(format!("theta0 must lie in (0, pi/2), got {theta0}")));
        }
        Ok(Self { theta0, s0, c0: 0.0 })
    }

    pub fn flux_constant(&self) -> f64 {
        self.s0 * self.theta0.sin()
    }

    /// Additive constant in `p(theta) = S0 sin(theta0) ln((1 + cos theta) / sin theta) + C`.
    pub fn pressure_constant(&self) -> f64 {
        -self.flux_constant() * half_angle_log(self.theta0) + self.c0
    }

    pub fn speed(&self, theta: f64) -> Result<f64> {
        check_domain(theta, self.theta0, FRAC_PI_2)?;
        Ok(self.speed_unchecked(theta))
    }

    pub fn pressure(&self, theta: f64) -> Result<f64> {
        check_domain(theta, self.theta0, FRAC_PI_2)?;
        Ok(self.pressure_unchecked(theta))
    }

    pub fn speed_unchecked(&self, theta: f64) -> f64 {
        self.flux_constant() / theta.sin()
    }

    pub fn pressure_unchecked(&self, theta: f64) -> f64 {
        self.flux_constant() * half_angle_log(theta) + self.pressure_constant()
    }
}

/// `ln((1 + cos t) / sin t)`, i.e. `-ln tan(t/2)`.
fn half_angle_log(t: f64) -> f64 {
    ((1.0 + t.cos()) / t.sin()).ln()
}

/// Either test problem, evaluated at points of R^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticProblem {
    Annulus(AnnulusProblem),
    Hemisphere(HemisphereProblem),
}

impl AnalyticProblem {
    pub fn s0(&self) -> f64 {
        match self {
            AnalyticProblem::Annulus(p) => p.s0,
            AnalyticProblem::Hemisphere(p) => p.s0,
        }
    }

    pub fn flux_constant(&self) -> f64 {
        match self {
            AnalyticProblem::Annulus(p) => p.flux_constant(),
            AnalyticProblem::Hemisphere(p) => p.flux_constant(),
        }
    }

    /// Total flow entering through the inner (hole) boundary: `2 pi K`.
    pub fn total_inflow(&self) -> f64 {
        2.0 * PI * self.flux_constant()
    }

    /// Distance from the z-axis after projecting to the surface; this is the
    /// abscissa of the speed and pressure profiles.
    pub fn radial_coordinate(&self, p: Point3) -> f64 {
        match self {
            AnalyticProblem::Annulus(_) => p[0].hypot(p[1]),
            AnalyticProblem::Hemisphere(_) => colatitude(p).sin(),
        }
    }

    pub fn speed_at(&self, p: Point3) -> f64 {
        match self {
            AnalyticProblem::Annulus(a) => a.speed_unchecked(p[0].hypot(p[1])),
            AnalyticProblem::Hemisphere(h) => h.speed_unchecked(colatitude(p)),
        }
    }

    pub fn pressure_at(&self, p: Point3) -> f64 {
        match self {
            AnalyticProblem::Annulus(a) => a.pressure_unchecked(p[0].hypot(p[1])),
            AnalyticProblem::Hemisphere(h) => h.pressure_unchecked(colatitude(p)),
        }
    }

    /// Exact velocity vector at `p` (for the hemisphere, at the projection of
    /// `p` to the sphere).
    pub fn velocity_at(&self, p: Point3) -> Point3 {
        let speed = self.speed_at(p);
        match self {
            AnalyticProblem::Annulus(_) => {
                let r = p[0].hypot(p[1]);
                [speed * p[0] / r, speed * p[1] / r, 0.0]
            }
            AnalyticProblem::Hemisphere(_) => {
                let (theta, phi) = (colatitude(p), p[1].atan2(p[0]));
                let (st, ct) = theta.sin_cos();
                let (sp, cp) = phi.sin_cos();
                [speed * ct * cp, speed * ct * sp, -speed * st]
            }
        }
    }

    /// Integral of the exact flux form along the segment `a -> b`.
    pub fn exact_edge_flux(&self, a: Point3, b: Point3) -> Result<f64> {
        Ok(self.flux_constant() * azimuth_step(a, b)?)
    }
}

/// Colatitude of the direction of `p`, measured from +z.
pub fn colatitude(p: Point3) -> f64 {
    p[0].hypot(p[1]).atan2(p[2])
}

/// Change in azimuth from `a` to `b`, wrapped to `(-pi, pi]`. Errors if either
/// point is on the z-axis or the step is (numerically) a half turn.
pub fn azimuth_step(a: Point3, b: Point3) -> Result<f64> {
    let on_axis = |p: Point3| p[0] == 0.0 && p[1] == 0.0;
    if on_axis(a) || on_axis(b) {
        return Err(Error::EdgeThroughAxis);
    }
    let mut d = b[1].atan2(b[0]) - a[1].atan2(a[0]);
    if d > PI {
        d -= 2.0 * PI;
    } else if d <= -PI {
        d += 2.0 * PI;
    }
    if d.abs() >= PI - 1e-9 {
        return Err(Error::EdgeTooLong(d));
    }
    Ok(d)
}
