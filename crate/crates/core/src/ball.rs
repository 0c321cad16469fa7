//! Volume of a geodesic ball centred at the origin.
//!
//! In the coordinates `(s, λ, α)` of the exponential map the volume element is
//! `½ sinh 2r(s,α) · |∂(r,φ)/∂(s,α)| ds dλ dα` (using `∂θ/∂λ = 1`). Both
//! halves `α ≷ 0` contribute equally, so
//!
//! ```text
//! Vol B(ρ) = 4π ∫₀^ρ ∫₀^{π/2} ½ sinh 2r · |J| dα ds,
//! ```
//!
//! with the inner range split at `α = π/4`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::geodesics::{exp_map_with_jacobian, ToleranceConfig};
use crate::numeric::quadrature::{integrate_fallible, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallVolumeResult {
    pub rho: f64,
    pub volume: f64,
    pub est_error: f64,
    /// Number of geodesics integrated.
    pub evaluations: usize,
}

/// `½ sinh 2r(s,α) · |J(s,α)|`.
pub fn volume_density(s: f64, alpha: f64, tol: &ToleranceConfig) -> Result<f64> {
    let d = exp_map_with_jacobian(s, 0.0, alpha, tol)?;
    Ok(0.5 * (2.0 * d.endpoint.coords.r).sinh() * d.det().abs())
}

pub fn ball_volume(rho: f64, tol: &ToleranceConfig) -> Result<BallVolumeResult> {
    if !(0.0..FRAC_PI_2).contains(&rho) {
        return Err(Error::Domain(format!("ball radius {rho} outside [0, π/2)")));
    }
    tol.validate()?;
    if rho == 0.0 {
        return Ok(BallVolumeResult {
            rho,
            volume: 0.0,
            est_error: 0.0,
            evaluations: 0,
        });
    }
    // the inner integrals carry a tighter tolerance than the outer one so that
    // their errors do not masquerade as roughness in s
    let inner_opts = QuadOptions {
        rel_tol: tol.quad_rel_tol * 1e-2,
        abs_tol: 1e-300,
        max_intervals: 400,
    };
    let outer_opts = QuadOptions {
        rel_tol: tol.quad_rel_tol,
        abs_tol: 1e-300,
        max_intervals: 400,
    };
    let mut evaluations = 0usize;
    let mut inner_error = 0.0_f64;
    let outer = integrate_fallible(
        |s| {
            let mut total = 0.0;
            for (a, b) in [(0.0, FRAC_PI_4), (FRAC_PI_4, FRAC_PI_2)] {
                let r =
                    integrate_fallible(|alpha| volume_density(s, alpha, tol), a, b, &inner_opts)?;
                evaluations += r.evaluations;
                inner_error = inner_error.max(r.est_error / r.value.abs().max(1e-300));
                total += r.value;
            }
            Ok(total)
        },
        0.0,
        rho,
        &outer_opts,
    )?;
    let volume = 4.0 * PI * outer.value;
    Ok(BallVolumeResult {
        rho,
        volume,
        est_error: 4.0 * PI * outer.est_error + volume * inner_error,
        evaluations,
    })
}
