//! Geodesic distance by inverting the exponential map at the origin.
//!
//! `θ` only enters through the longitude (`∂θ/∂λ = 1`), so the shooting
//! problem reduces to the two equations `r(s, α) = r*`, `φ(s, α) = φ*`. These
//! are solved by a damped Newton iteration; `λ` is read off afterwards.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{exp_map, exp_map_with_jacobian, GeographicalCoords, ToleranceConfig};
use crate::error::{Error, Result};
use crate::numeric::minimize::golden_section;
use crate::prism::SideCurve;
use crate::projective::{
    from_hyperboloid, to_hyperboloid, translation_from, wrap_angle, HyperboloidCoords,
    ProjectivePoint,
};

/// Upper limit on arc lengths tried by the shooting solver.
const S_MAX: f64 = PI;
/// Grid size per axis of the fallback multistart over `(α, s₀)`.
const MULTISTART: usize = 8;
/// Accepted mismatch of the reached and requested points, as a projective
/// residual.
const POINT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceSolution {
    pub distance: f64,
    /// Geographical coordinates of the target as seen from the origin.
    pub geo: GeographicalCoords,
    /// Max-norm of `(r - r*, φ - φ*)` at the solution.
    pub residual: f64,
    pub iterations: usize,
    /// Number of initial guesses that converged.
    pub starts_converged: usize,
}

struct Converged {
    s: f64,
    alpha: f64,
    theta0: f64,
    residual: f64,
    iterations: usize,
}

fn residual_at(
    s: f64,
    alpha: f64,
    target: &HyperboloidCoords,
    tol: &ToleranceConfig,
) -> Result<([f64; 2], f64)> {
    let e = exp_map(GeographicalCoords::new(s, 0.0, alpha), tol)?;
    let f = [e.coords.r - target.r, wrap_angle(e.coords.phi - target.phi)];
    Ok((f, e.coords.theta))
}

fn norm(f: &[f64; 2]) -> f64 {
    f[0].abs().max(f[1].abs())
}

fn clamp(s: f64, alpha: f64) -> (f64, f64) {
    (s.clamp(0.0, S_MAX), alpha.clamp(-FRAC_PI_2, FRAC_PI_2))
}

/// Damped Newton from one initial guess.
fn newton(
    target: &HyperboloidCoords,
    mut s: f64,
    mut alpha: f64,
    tol: &ToleranceConfig,
) -> Option<Converged> {
    let mut polished = false;
    for it in 0..tol.max_newton_iters {
        let d = exp_map_with_jacobian(s, 0.0, alpha, tol).ok()?;
        let c = d.endpoint.coords;
        let f = [c.r - target.r, wrap_angle(c.phi - target.phi)];
        let fnorm = norm(&f);
        if fnorm < tol.newton_tol && polished {
            return Some(Converged {
                s,
                alpha,
                theta0: c.theta,
                residual: fnorm,
                iterations: it,
            });
        }
        let step = d.jacobian.try_inverse()? * nalgebra::Vector2::new(f[0], f[1]);
        let mut damping = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let (s1, a1) = clamp(s - damping * step[0], alpha - damping * step[1]);
            if let Ok((f1, _)) = residual_at(s1, a1, target, tol) {
                if norm(&f1) < fnorm || (fnorm < tol.newton_tol && norm(&f1) <= fnorm) {
                    s = s1;
                    alpha = a1;
                    accepted = true;
                    break;
                }
            }
            damping *= 0.5;
        }
        if fnorm < tol.newton_tol {
            // one extra step beyond the tolerance, taken only if it helps
            polished = true;
            continue;
        }
        if !accepted {
            return None;
        }
    }
    None
}

/// Same fibre as the origin: the fibre itself is the geodesic.
fn on_origin_fibre(target: &HyperboloidCoords) -> Option<DistanceSolution> {
    if target.r.abs() >= 1e-15 {
        return None;
    }
    let phi = wrap_angle(target.phi);
    Some(DistanceSolution {
        distance: phi.abs(),
        geo: GeographicalCoords::new(phi.abs(), 0.0, FRAC_PI_2.copysign(phi)),
        residual: 0.0,
        iterations: 0,
        starts_converged: 1,
    })
}

/// Newton from every point of an `(α, s₀)` grid; the shortest converged
/// geodesic wins.
fn multistart(target: &HyperboloidCoords, tol: &ToleranceConfig) -> (Option<Converged>, usize) {
    let mut found: Option<Converged> = None;
    let mut converged = 0;
    for i in 0..MULTISTART {
        for j in 0..MULTISTART {
            let a0 = -FRAC_PI_2 + PI * (i as f64 + 0.5) / MULTISTART as f64;
            let s0 = S_MAX * (j as f64 + 0.5) / MULTISTART as f64;
            if let Some(c) = newton(target, s0, a0, tol) {
                converged += 1;
                if found.as_ref().is_none_or(|b| c.s < b.s) {
                    found = Some(c);
                }
            }
        }
    }
    (found, converged)
}

/// Distance from the origin to the point with hyperboloid coordinates
/// `target`, with an optional initial guess `(s, α)`.
///
/// The guess and a Euclidean estimate are tried first; the grid multistart
/// only runs when neither converges. [`distance_from_origin_exhaustive`]
/// always runs the grid.
pub fn distance_from_origin(
    target: HyperboloidCoords,
    guess: Option<(f64, f64)>,
    tol: &ToleranceConfig,
) -> Result<DistanceSolution> {
    if let Some(sol) = on_origin_fibre(&target) {
        return Ok(sol);
    }
    let phi = wrap_angle(target.phi);
    let euclid = (target.r.hypot(phi), phi.atan2(target.r));
    let mut starts: Vec<(f64, f64)> = guess.into_iter().collect();
    starts.push(euclid);

    let (found, converged) = match starts
        .iter()
        .find_map(|&(s0, a0)| newton(&target, s0, a0, tol))
    {
        Some(c) => (Some(c), 1),
        None => multistart(&target, tol),
    };
    finish(&target, found, converged, &starts, tol)
}

/// Like [`distance_from_origin`], but the shortest of all grid solutions is
/// taken even when the first guess converges.
pub fn distance_from_origin_exhaustive(
    target: HyperboloidCoords,
    tol: &ToleranceConfig,
) -> Result<DistanceSolution> {
    if let Some(sol) = on_origin_fibre(&target) {
        return Ok(sol);
    }
    let phi = wrap_angle(target.phi);
    let euclid = (target.r.hypot(phi), phi.atan2(target.r));
    let (mut found, mut converged) = multistart(&target, tol);
    if let Some(c) = newton(&target, euclid.0, euclid.1, tol) {
        converged += 1;
        if found.as_ref().is_none_or(|b| c.s < b.s) {
            found = Some(c);
        }
    }
    finish(&target, found, converged, &[euclid], tol)
}

fn finish(
    target: &HyperboloidCoords,
    found: Option<Converged>,
    converged: usize,
    starts: &[(f64, f64)],
    tol: &ToleranceConfig,
) -> Result<DistanceSolution> {
    let Some(c) = found else {
        let best = starts
            .iter()
            .filter_map(|&(s, a)| residual_at(s, a, target, tol).ok())
            .map(|(f, _)| norm(&f))
            .fold(f64::INFINITY, f64::min);
        return Err(Error::NoConvergence {
            best_residual: best,
        });
    };

    let lambda = wrap_angle(target.theta - c.theta0);
    let geo = GeographicalCoords::new(c.s, lambda, c.alpha);
    let reached = exp_map(geo, tol)?;
    let mismatch =
        from_hyperboloid(reached.coords).proportional_residual(&from_hyperboloid(*target));
    if !(mismatch < POINT_TOL) {
        return Err(Error::NoConvergence {
            best_residual: mismatch,
        });
    }
    Ok(DistanceSolution {
        distance: c.s,
        geo,
        residual: c.residual,
        iterations: c.iterations,
        starts_converged: converged,
    })
}

/// Shooting solution from `p` to `q`: `q` is carried along by the translation
/// taking `p` to the origin.
pub fn solve_distance(
    p: &ProjectivePoint,
    q: &ProjectivePoint,
    tol: &ToleranceConfig,
) -> Result<DistanceSolution> {
    let moved = q.transform(&translation_from(p)?);
    distance_from_origin(to_hyperboloid(&moved)?, None, tol)
}

pub fn distance(p: &ProjectivePoint, q: &ProjectivePoint, tol: &ToleranceConfig) -> Result<f64> {
    Ok(solve_distance(p, q, tol)?.distance)
}

/// Distance from the origin to the surface swept by the fibre lines through a
/// side curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FibreCurveDistance {
    pub rho: f64,
    pub t_min: f64,
    /// Fibre shift of the nearest point.
    pub psi_min: f64,
    /// `artanh |c(t_min)|`, the distance within the base plane alone.
    pub base_radius: f64,
    pub theta_min: f64,
    /// Geographical coordinates of the nearest point.
    pub geo: GeographicalCoords,
    pub distance_evaluations: usize,
}

const T_XTOL: f64 = 1e-8;
const PSI_XTOL: f64 = 1e-7;
const PSI_RANGE: f64 = 0.5;

/// `min_{t, ψ} d(E0, c(t)·S(ψ))` by nested golden-section searches.
pub fn distance_to_fibred_curve(
    curve: &SideCurve,
    tol: &ToleranceConfig,
) -> Result<FibreCurveDistance> {
    let mut evaluations = 0usize;
    let mut warm: Option<(f64, f64)> = None;
    let mut inner = |t: f64, evaluations: &mut usize| -> Result<(f64, f64, DistanceSolution)> {
        let (y, z) = curve.yz(t);
        let r = y.hypot(z).atanh();
        let theta = z.atan2(y);
        let mut best: Option<(f64, DistanceSolution)> = None;
        let m = golden_section(
            |psi| {
                *evaluations += 1;
                let sol = distance_from_origin(HyperboloidCoords::new(r, theta, psi), warm, tol)?;
                warm = Some((sol.distance, sol.geo.alpha));
                if best.as_ref().is_none_or(|(_, b)| sol.distance < b.distance) {
                    best = Some((psi, sol));
                }
                Ok(sol.distance)
            },
            -PSI_RANGE,
            PSI_RANGE,
            PSI_XTOL,
        )?;
        let (psi, sol) = best.expect("golden section evaluates at least twice");
        Ok((m.value.min(sol.distance), psi, sol))
    };
    let mut best: Option<(f64, f64, f64, DistanceSolution)> = None;
    let outer = golden_section(
        |t| {
            let (d, psi, sol) = inner(t, &mut evaluations)?;
            if best.as_ref().is_none_or(|b| d < b.0) {
                best = Some((d, t, psi, sol));
            }
            Ok(d)
        },
        0.0,
        1.0,
        T_XTOL,
    )?;
    let (rho, t_min, psi_min, sol) = best.expect("golden section evaluates at least twice");
    debug_assert!(rho <= outer.value);
    let (y, z) = curve.yz(t_min);
    Ok(FibreCurveDistance {
        rho,
        t_min,
        psi_min,
        base_radius: y.hypot(z).atanh(),
        theta_min: z.atan2(y),
        geo: sol.geo,
        distance_evaluations: evaluations,
    })
}
