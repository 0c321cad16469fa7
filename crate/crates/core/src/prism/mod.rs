//! Regular p-gonal prisms and their tilings.
//!
//! For integers `p >= 3` and `q > 2p/(p-2)` the base figure is centred at the
//! origin of the base plane, with vertices at hyperbolic radius `artanh b` and
//! polar angles `2πk/p`. Its sides are Euclidean circular arcs in the model
//! coordinates `(y, z)`; the fibre lines over them form the side surfaces.

mod curve;
mod group;
mod volume;

pub use curve::{circle_through, PolarSideCurve, SideCurve};
pub use group::{group_generators, verify_relations, GroupGenerators, RelationReport};
pub use volume::{prism_volume, sector_integral, sector_volume};

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Validated tiling parameters with derived constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrismParams {
    pub p: u32,
    pub q: u32,
    /// `tanh` of the circumradius of the base figure.
    pub b: f64,
    /// `Ψ = π/2 - π/p - π/q`, the half-height of the periodic prism.
    pub psi_periodic: f64,
    /// `2Ψ = π - 2π/p - 2π/q`.
    pub h_periodic: f64,
}

impl PrismParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        validate(p, q)
    }

    pub fn side_curve(&self) -> SideCurve {
        SideCurve::new(*self)
    }
}

/// The lower bound `2p/(p-2)` that `q` must exceed.
pub fn q_bound(p: i64) -> f64 {
    2.0 * p as f64 / (p as f64 - 2.0)
}

pub fn validate(p: i64, q: i64) -> Result<PrismParams> {
    let invalid = |reason: String| Error::InvalidParams { p, q, reason };
    if p < 3 {
        return Err(invalid("p must be at least 3".into()));
    }
    // q > 2p/(p-2)  <=>  q(p-2) > 2p, kept in integers
    if q < 1 || q.checked_mul(p - 2).is_some_and(|l| l <= 2 * p) {
        return Err(invalid(format!("q must exceed 2p/(p-2) = {}", q_bound(p))));
    }
    let (p, q) = (
        u32::try_from(p).map_err(|_| invalid("p too large".into()))?,
        u32::try_from(q).map_err(|_| invalid("q too large".into()))?,
    );
    let psi = PI / 2.0 - PI / p as f64 - PI / q as f64;
    Ok(PrismParams {
        p,
        q,
        b: vertex_b(p, q),
        psi_periodic: psi,
        h_periodic: 2.0 * psi,
    })
}

/// `b = tanh(OA₁) = sqrt((1 - tan(π/p)tan(π/q)) / (1 + tan(π/p)tan(π/q)))`.
pub fn vertex_b(p: u32, q: u32) -> f64 {
    let u = (PI / p as f64).tan() * (PI / q as f64).tan();
    ((1.0 - u) / (1.0 + u)).max(0.0).sqrt()
}

/// Euclidean curvature `C_p(q)` of the side curves in the model.
pub fn curvature(params: &PrismParams) -> f64 {
    let (a, b) = (PI / params.p as f64, PI / params.q as f64);
    let num = (a + b).cos() * ((2.0 * a).sin() + (2.0 * b).sin());
    let den = (a + b).sin() * (1.0 - (2.0 * a).cos());
    (num / den).sqrt()
}

/// Radius `1 / C_p(q)` of the circle carrying each side curve.
pub fn curve_radius(params: &PrismParams) -> f64 {
    1.0 / curvature(params)
}

/// `lim_{q→∞} C_p(q) = cot(π/p)`.
pub fn curvature_q_limit(p: u32) -> f64 {
    1.0 / (PI / p as f64).tan()
}

/// Distance of parallelism `log(cot φ)` belonging to the angle `φ`.
pub fn parallelism_distance(phi: f64) -> Result<f64> {
    if !(phi > 0.0 && phi < PI / 2.0) {
        return Err(Error::Domain(format!(
            "angle of parallelism {phi} outside (0, π/2)"
        )));
    }
    Ok((1.0 / phi.tan()).ln())
}
