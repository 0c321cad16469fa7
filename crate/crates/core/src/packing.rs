//! Ball packings in the non-periodic prism tilings: one ball per prism,
//! touching the side surfaces, with prism height `2ρ_opt`.

use rayon::prelude::*;
use serde::Serialize;

use crate::ball::ball_volume;
use crate::error::{Error, Result};
use crate::geodesics::{distance_to_fibred_curve, ToleranceConfig};
use crate::prism::{prism_volume, validate, PrismParams};

/// Minimal gap between the optimal and the periodic prism heights.
const NON_PERIODIC_MARGIN: f64 = 1e-6;
/// Densities this close to the maximum are reported as ties.
pub const TIE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    pub t_min: f64,
    pub psi_min: f64,
    pub base_radius: f64,
    pub ball_est_error: f64,
    pub distance_evaluations: usize,
    pub ball_evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PackingResult {
    pub p: u32,
    pub q: u32,
    pub rho_opt: f64,
    pub h_opt: f64,
    pub vol_ball: f64,
    pub vol_prism: f64,
    pub density: f64,
    pub diagnostics: Diagnostics,
}

/// Radius of the largest ball about the origin inside the infinite prism.
pub fn optimal_radius(params: &PrismParams, tol: &ToleranceConfig) -> Result<f64> {
    Ok(distance_to_fibred_curve(&params.side_curve(), tol)?.rho)
}

pub fn packing_density(params: &PrismParams, tol: &ToleranceConfig) -> Result<PackingResult> {
    tol.validate()?;
    let near = distance_to_fibred_curve(&params.side_curve(), tol)?;
    let rho = near.rho;
    if !(rho > 0.0 && rho < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Consistency(format!(
            "optimal radius {rho} outside (0, π/2)"
        )));
    }
    let ball = ball_volume(rho, tol)?;
    let h_opt = 2.0 * rho;
    let vol_prism = prism_volume(params, h_opt, tol.quad_rel_tol * 1e-3)?;
    let density = ball.volume / vol_prism;
    if !(density > 0.0 && density < 1.0) {
        return Err(Error::Consistency(format!(
            "density {density} of ({},{}) outside (0, 1)",
            params.p, params.q
        )));
    }
    if (h_opt - params.h_periodic).abs() <= NON_PERIODIC_MARGIN {
        return Err(Error::Consistency(format!(
            "optimal height {h_opt} coincides with the periodic height {}",
            params.h_periodic
        )));
    }
    Ok(PackingResult {
        p: params.p,
        q: params.q,
        rho_opt: rho,
        h_opt,
        vol_ball: ball.volume,
        vol_prism,
        density,
        diagnostics: Diagnostics {
            t_min: near.t_min,
            psi_min: near.psi_min,
            base_radius: near.base_radius,
            ball_est_error: ball.est_error,
            distance_evaluations: near.distance_evaluations,
            ball_evaluations: ball.evaluations,
        },
    })
}

/// Outcome of one sweep row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub p: i64,
    pub q: i64,
    pub outcome: Result<PackingResult>,
}

/// Computes every `(p, q)` of the product `ps × qs` in parallel; rows come
/// back ordered by `(p, q)`. Invalid pairs and numeric failures are recorded
/// in their row instead of aborting the sweep.
pub fn sweep(ps: &[i64], qs: &[i64], tol: &ToleranceConfig) -> Vec<SweepRow> {
    let mut pairs: Vec<(i64, i64)> = ps
        .iter()
        .flat_map(|&p| qs.iter().map(move |&q| (p, q)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    compute_pairs(&pairs, tol)
}

/// Like [`sweep`] for an explicit list of pairs, keeping the given order.
pub fn compute_pairs(pairs: &[(i64, i64)], tol: &ToleranceConfig) -> Vec<SweepRow> {
    pairs
        .par_iter()
        .map(|&(p, q)| SweepRow {
            p,
            q,
            outcome: validate(p, q).and_then(|pp| packing_density(&pp, tol)),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Argmax {
    pub best: PackingResult,
    /// Other rows within [`TIE_TOL`] of the best density.
    pub ties: Vec<PackingResult>,
}

/// The row of largest density. Near-ties are listed, not broken silently.
pub fn argmax_density(results: &[PackingResult]) -> Result<Argmax> {
    let best = results
        .iter()
        .copied()
        .reduce(|a, b| if b.density > a.density { b } else { a })
        .ok_or_else(|| Error::Empty("no packing results to maximize over".into()))?;
    let ties = results
        .iter()
        .filter(|r| (r.p, r.q) != (best.p, best.q) && best.density - r.density <= TIE_TOL)
        .copied()
        .collect();
    Ok(Argmax { best, ties })
}
