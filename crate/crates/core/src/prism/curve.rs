use std::f64::consts::PI;

use super::PrismParams;
use crate::error::{Error, Result};
use crate::numeric::minimize::bisect;
use crate::projective::{InhomogeneousCoords, ProjectivePoint};

/// The side curve `c_p^q(t)`, `t ∈ [0, 1]`, joining the vertex at polar angle
/// 0 to the vertex at `2π/p` in the base plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideCurve {
    pub params: PrismParams,
}

impl SideCurve {
    pub fn new(params: PrismParams) -> Self {
        Self { params }
    }

    /// Model coordinates `(0, y(t), z(t))`.
    pub fn point(&self, t: f64) -> InhomogeneousCoords {
        let (y, z) = self.yz(t);
        InhomogeneousCoords { x: 0.0, y, z }
    }

    pub fn projective_point(&self, t: f64) -> ProjectivePoint {
        self.point(t).into()
    }

    pub fn yz(&self, t: f64) -> (f64, f64) {
        let p = self.params.p as f64;
        let q = self.params.q as f64;
        let a = 2.0 * PI / p;
        let b = 2.0 * PI / q;
        let sum = PI / p + PI / q;
        let diff = PI / p - PI / q;
        let (s_sum, c_sum) = sum.sin_cos();
        let s_sum2 = s_sum * s_sum;
        let (sa, ca) = a.sin_cos();
        let sab = (a + b).sin();
        let root = sab.sqrt();
        let den = (sa + b.sin()).sqrt() * (s_sum2 + t * t * c_sum * c_sum);

        let y = root
            * (t * ca * s_sum2 - 0.5 * t * sa * sab
                + s_sum2 * (1.0 - t)
                + t * t * c_sum * diff.cos())
            / den;
        let z = t
            * root
            * (sa * s_sum2
                + 0.5 * ca * sab * (1.0 - t)
                + c_sum * (t * sa * c_sum + s_sum * (t - 1.0)))
            / den;
        (y, z)
    }

    /// Euclidean radius `|c(t)| = tanh r` of a curve point.
    pub fn model_radius(&self, t: f64) -> f64 {
        let (y, z) = self.yz(t);
        y.hypot(z)
    }

    pub fn polar_angle(&self, t: f64) -> f64 {
        let (y, z) = self.yz(t);
        z.atan2(y)
    }

    /// Image of the curve under the rotation by `2πk/p` about the fibre
    /// through the origin.
    pub fn rotated_point(&self, k: u32, t: f64) -> InhomogeneousCoords {
        let (y, z) = self.yz(t);
        let w = 2.0 * PI * k as f64 / self.params.p as f64;
        let (s, c) = w.sin_cos();
        InhomogeneousCoords {
            x: 0.0,
            y: c * y - s * z,
            z: s * y + c * z,
        }
    }

    pub fn polar(&self) -> Result<PolarSideCurve> {
        PolarSideCurve::new(*self)
    }
}

/// The side curve as a polar graph `r = r(θ)`, `θ ∈ [0, 2π/p]`, with `r` the
/// hyperbolic radius in the base plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarSideCurve {
    pub curve: SideCurve,
    pub theta_end: f64,
}

const MONOTONE_SAMPLES: usize = 256;

impl PolarSideCurve {
    pub fn new(curve: SideCurve) -> Result<Self> {
        let mut prev = curve.polar_angle(0.0);
        for i in 1..=MONOTONE_SAMPLES {
            let th = curve.polar_angle(i as f64 / MONOTONE_SAMPLES as f64);
            if !(th > prev) {
                return Err(Error::Geometry(format!(
                    "polar angle of the ({},{}) side curve is not increasing",
                    curve.params.p, curve.params.q
                )));
            }
            prev = th;
        }
        Ok(Self {
            curve,
            theta_end: 2.0 * PI / curve.params.p as f64,
        })
    }

    /// Curve parameter with polar angle `θ`, by bisection.
    pub fn t_of_theta(&self, theta: f64) -> f64 {
        if theta <= 0.0 {
            return 0.0;
        }
        if theta >= self.theta_end {
            return 1.0;
        }
        bisect(|t| self.curve.polar_angle(t) - theta, 0.0, 1.0, 1e-13).unwrap_or(0.0)
    }

    /// `tanh r(θ)`.
    pub fn model_radius(&self, theta: f64) -> f64 {
        self.curve.model_radius(self.t_of_theta(theta))
    }

    pub fn r(&self, theta: f64) -> f64 {
        self.model_radius(theta).atanh()
    }

    /// `¼(cosh 2r(θ) - 1) = ½ sinh² r(θ)`, written through `R = tanh r` as
    /// `½ R² / (1 - R²)`.
    pub fn sector_density(&self, theta: f64) -> f64 {
        let rr = self.model_radius(theta).powi(2);
        0.5 * rr / (1.0 - rr)
    }
}

/// Centre and radius of the circle through three points of the plane.
pub fn circle_through(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Option<((f64, f64), f64)> {
    let d = 2.0 * (a.0 * (b.1 - c.1) + b.0 * (c.1 - a.1) + c.0 * (a.1 - b.1));
    if d.abs() < 1e-300 {
        return None;
    }
    let a2 = a.0 * a.0 + a.1 * a.1;
    let b2 = b.0 * b.0 + b.1 * b.1;
    let c2 = c.0 * c.0 + c.1 * c.1;
    let ux = (a2 * (b.1 - c.1) + b2 * (c.1 - a.1) + c2 * (a.1 - b.1)) / d;
    let uy = (a2 * (c.0 - b.0) + b2 * (a.0 - c.0) + c2 * (b.0 - a.0)) / d;
    let r = (a.0 - ux).hypot(a.1 - uy);
    Some(((ux, uy), r))
}
