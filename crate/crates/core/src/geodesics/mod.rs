//! Riemannian structure in hyperboloid coordinates `(r, θ, φ)`.
//!
//! The metric is the one pulled back from the identity at the origin by the
//! translations `T`:
//!
//! ```text
//! ds² = dr² + cosh²r·sinh²r·dθ² + (dφ + sinh²r·dθ)²
//! ```
//!
//! whose volume element is `√det g = ½·sinh 2r`. Geodesics are integrated as
//! Hamilton's equations for `H = ½ g^{ij} p_i p_j`; `θ` and `φ` are cyclic so
//! `p_θ` and `p_φ` are conserved. Geodesics leaving the origin have `p_θ = 0`
//! and `p_φ = sin α`.

mod distance;

pub use distance::{
    distance, distance_from_origin, distance_from_origin_exhaustive, distance_to_fibred_curve,
    solve_distance, DistanceSolution, FibreCurveDistance,
};

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Matrix2, Matrix3};

use crate::error::{Error, Result};
use crate::numeric::ode::{self, OdeOptions, OdeStats};
use crate::numeric::{Dual, Real};
use crate::projective::HyperboloidCoords;

/// Length of the series step taken away from the polar singularity at `r = 0`.
pub const TAYLOR_STEP: f64 = 1e-4;

/// Numerical tolerances shared by the integrator, the shooting solver and
/// the quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub ode_rel_tol: f64,
    pub ode_abs_tol: f64,
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    pub fd_step: f64,
    pub quad_rel_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            ode_rel_tol: 1e-12,
            ode_abs_tol: 1e-12,
            newton_tol: 1e-11,
            max_newton_iters: 64,
            fd_step: 1e-6,
            quad_rel_tol: 1e-7,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("ode_rel_tol", self.ode_rel_tol),
            ("ode_abs_tol", self.ode_abs_tol),
            ("newton_tol", self.newton_tol),
            ("fd_step", self.fd_step),
            ("quad_rel_tol", self.quad_rel_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if self.max_newton_iters == 0 {
            return Err(Error::Domain("max_newton_iters must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn ode_options(&self) -> OdeOptions {
        OdeOptions {
            rel_tol: self.ode_rel_tol,
            abs_tol: self.ode_abs_tol,
            ..OdeOptions::default()
        }
    }
}

/// Geographical coordinates of a point reached from the origin: arc length
/// `s`, longitude `λ` and inclination `α` of the initial direction above the
/// base plane.
///
/// `α ∈ [0, π/2]` covers the upper half-ball; negative `α` (down to `-π/2`)
/// gives the mirror geodesics below the base plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeographicalCoords {
    pub s: f64,
    pub lambda: f64,
    pub alpha: f64,
}

impl GeographicalCoords {
    pub fn new(s: f64, lambda: f64, alpha: f64) -> Self {
        Self { s, lambda, alpha }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicEndpoint {
    pub coords: HyperboloidCoords,
    /// Coordinate velocity `(ṙ, θ̇, φ̇)` at the endpoint.
    pub tangent: [f64; 3],
    pub stats: OdeStats,
}

/// Endpoint together with its derivatives with respect to `s` and `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointDerivatives {
    pub endpoint: GeodesicEndpoint,
    /// `∂(r, φ)/∂(s, α)`.
    pub jacobian: Matrix2<f64>,
    pub dtheta_dalpha: f64,
}

impl EndpointDerivatives {
    pub fn det(&self) -> f64 {
        self.jacobian.determinant()
    }
}

/// Metric tensor in the coordinates `(r, θ, φ)`.
pub fn metric_at(r: f64) -> Matrix3<f64> {
    let sh2 = r.sinh().powi(2);
    Matrix3::new(
        1.0,
        0.0,
        0.0,
        0.0,
        sh2 * (2.0 * r).cosh(),
        sh2,
        0.0,
        sh2,
        1.0,
    )
}

/// `g(v, v)` for a coordinate velocity `v` at radius `r`.
pub fn metric_norm_sq(r: f64, v: &[f64; 3]) -> f64 {
    let g = metric_at(r);
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += g[(i, j)] * v[i] * v[j];
        }
    }
    acc
}

/// Phase-space state `(r, θ, φ, p_r, p_θ, p_φ)`.
pub type GeodesicState<T> = [T; 6];

/// Hamilton's equations of the geodesic flow.
///
/// Terms carrying `p_θ` are singular at `r = 0`; they are skipped when `p_θ`
/// vanishes identically, which is the case for every geodesic through the
/// origin.
pub fn geodesic_rhs<T: Real>(y: &GeodesicState<T>) -> GeodesicState<T> {
    let [r, _, _, pr, pt, pp] = *y;
    let one = T::constant(1.0);
    let ch = r.cosh();
    let th = r.tanh();
    let sech2 = one / (ch * ch);
    let mut dtheta = -pp * sech2;
    let mut dphi = pp * (one + th * th);
    let mut dpr = -pp * pp * th * sech2;
    if !pt.is_zero() {
        let sh = r.sinh();
        let d = sh * sh * ch * ch;
        let d_prime = (sh * ch).scale(2.0) * (ch * ch + sh * sh);
        dtheta = dtheta + pt / d;
        dphi = dphi - pt * sech2;
        dpr = dpr + pt * pt * d_prime / (d * d).scale(2.0) - (pt * pp * th * sech2).scale(2.0);
    }
    [pr, dtheta, dphi, dpr, T::constant(0.0), T::constant(0.0)]
}

/// Coordinate velocity `(ṙ, θ̇, φ̇)` of a phase-space state.
pub fn velocity(y: &GeodesicState<f64>) -> [f64; 3] {
    let d = geodesic_rhs(y);
    [d[0], d[1], d[2]]
}

/// Integrates the geodesic flow from an arbitrary state over arc length `span`.
pub fn integrate_geodesic(
    y0: GeodesicState<f64>,
    span: f64,
    tol: &ToleranceConfig,
) -> Result<(GeodesicState<f64>, OdeStats)> {
    ode::integrate(geodesic_rhs, y0, span, &tol.ode_options())
}

/// Series solution from the origin, accurate to `O(s⁵)`.
fn origin_series<T: Real>(s: f64, lambda: f64, alpha: T) -> GeodesicState<T> {
    let c = alpha.sin();
    let ca = alpha.cos();
    let s2 = s * s;
    let s3 = s2 * s;
    let c2 = c * c;
    let ca2 = ca * ca;
    [
        ca.scale(s) - (c2 * ca).scale(s3 / 6.0),
        T::constant(lambda) - c.scale(s) + (c * ca2).scale(s3 / 3.0),
        c.scale(s) + (c * ca2).scale(s3 / 3.0),
        ca - (c2 * ca).scale(s2 / 2.0),
        T::constant(0.0),
        c,
    ]
}

fn check_geo(s: f64, alpha: f64) -> Result<()> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!(
            "arc length must be finite and nonnegative, got {s}"
        )));
    }
    if !(alpha.abs() <= FRAC_PI_2 + 1e-12) {
        return Err(Error::Domain(format!(
            "inclination α = {alpha} outside [-π/2, π/2]"
        )));
    }
    Ok(())
}

fn shoot<T: Real>(
    s: f64,
    lambda: f64,
    alpha: T,
    tol: &ToleranceConfig,
) -> Result<(GeodesicState<T>, OdeStats)> {
    if s <= TAYLOR_STEP {
        return Ok((origin_series(s, lambda, alpha), OdeStats::default()));
    }
    let y0 = origin_series(TAYLOR_STEP, lambda, alpha);
    ode::integrate(geodesic_rhs, y0, s - TAYLOR_STEP, &tol.ode_options())
}

fn endpoint_from_state(y: &GeodesicState<f64>, stats: OdeStats) -> GeodesicEndpoint {
    GeodesicEndpoint {
        coords: HyperboloidCoords::new(y[0], y[1], y[2]),
        tangent: velocity(y),
        stats,
    }
}

/// The exponential map at the origin in geographical coordinates.
pub fn exp_map(g: GeographicalCoords, tol: &ToleranceConfig) -> Result<GeodesicEndpoint> {
    check_geo(g.s, g.alpha)?;
    let (y, stats) = shoot(g.s, g.lambda, g.alpha, tol)?;
    Ok(endpoint_from_state(&y, stats))
}

/// Exponential map with `∂(r, φ)/∂(s, α)` from forward-mode differentiation of
/// the integration in `α`; the `s`-column is the endpoint velocity.
pub fn exp_map_with_jacobian(
    s: f64,
    lambda: f64,
    alpha: f64,
    tol: &ToleranceConfig,
) -> Result<EndpointDerivatives> {
    check_geo(s, alpha)?;
    let (y, stats) = shoot(s, lambda, Dual::variable(alpha), tol)?;
    let values: GeodesicState<f64> = y.map(|v| v.v);
    let endpoint = endpoint_from_state(&values, stats);
    let [r_s, _, phi_s] = endpoint.tangent;
    Ok(EndpointDerivatives {
        endpoint,
        jacobian: Matrix2::new(r_s, y[0].d, phi_s, y[2].d),
        dtheta_dalpha: y[1].d,
    })
}

/// `∂(r, φ)/∂(s, α)` by central finite differences of [`exp_map`] with step
/// `tol.fd_step`.
pub fn endpoint_jacobian(s: f64, alpha: f64, tol: &ToleranceConfig) -> Result<Matrix2<f64>> {
    let h = tol.fd_step;
    if !(s > h) {
        return Err(Error::Domain(format!(
            "finite-difference Jacobian needs s > {h}, got {s}"
        )));
    }
    if !(alpha - h >= -FRAC_PI_2 && alpha + h <= FRAC_PI_2) {
        return Err(Error::Domain(format!(
            "α = {alpha} too close to ±π/2 for a central difference"
        )));
    }
    let at = |s: f64, a: f64| -> Result<(f64, f64)> {
        let e = exp_map(GeographicalCoords::new(s, 0.0, a), tol)?;
        Ok((e.coords.r, e.coords.phi))
    };
    let (rsp, psp) = at(s + h, alpha)?;
    let (rsm, psm) = at(s - h, alpha)?;
    let (rap, pap) = at(s, alpha + h)?;
    let (ram, pam) = at(s, alpha - h)?;
    let k = 0.5 / h;
    Ok(Matrix2::new(
        (rsp - rsm) * k,
        (rap - ram) * k,
        (psp - psm) * k,
        (pap - pam) * k,
    ))
}
