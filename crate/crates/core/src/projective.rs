//! Projective hyperboloid model of the SL(2,R)~ geometry.
//!
//! Points are homogeneous row vectors `(x0; x1; x2; x3)` taken up to a
//! positive factor. The interior of the one-sheeted hyperboloid solid
//!
//! ```text
//! Q(X) = -x0·x0 - x1·x1 + x2·x2 + x3·x3 < 0
//! ```
//!
//! is the model space. The unimodular matrix `[[d, b], [c, a]]` of SL(2,R)
//! corresponds to `a = x0 + x3`, `b = x1 + x2`, `c = -x1 + x2`, `d = x0 - x3`,
//! so `Q(X) = bc - ad`; that correspondence is not needed computationally and
//! is not exposed.
//!
//! Isometries act on the right: `X' = X · M`. The module provides the
//! generating families used everywhere else:
//!
//! * [`fibre_translation`] `S(φ)`: the one-parameter group of fibre translations,
//! * [`translation_to`] `T`: the transitive translation mapping `E0` onto `X`,
//! * [`rotation_origin`] `R_{E0}(ω)`: rotation about the fibre through the origin,
//! * [`rotation_about_fibre`] `R_X(ω) = T⁻¹ R_{E0}(ω) T`.
//!
//! The hyperboloid parametrization
//!
//! ```text
//! x0 = cosh r cos φ,  x1 = cosh r sin φ,
//! x2 = sinh r cos(θ - φ),  x3 = sinh r sin(θ - φ)
//! ```
//!
//! gives the fibre-adapted coordinates `(r, θ, φ)` of [`HyperboloidCoords`].

use std::f64::consts::{PI, TAU};
use std::ops::Mul;

use nalgebra::{Matrix4, RowVector4};

use crate::error::{Error, Result};

/// Homogeneous coordinates of a model point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint {
    pub coords: RowVector4<f64>,
}

impl ProjectivePoint {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self {
            coords: RowVector4::new(x0, x1, x2, x3),
        }
    }

    /// The origin `E0(1;0;0;0)`.
    pub fn origin() -> Self {
        Self::new(1.0, 0.0, 0.0, 0.0)
    }

    pub fn x(&self, i: usize) -> f64 {
        self.coords[i]
    }

    pub fn quadratic_form(&self) -> f64 {
        quadratic_form(self)
    }

    pub fn is_interior(&self) -> bool {
        self.quadratic_form() < 0.0
    }

    /// Rescales by a positive factor so that `Q = -1`.
    pub fn normalized(&self) -> Result<Self> {
        let q = self.quadratic_form();
        if !(q < 0.0) {
            return Err(Error::ExteriorPoint { q });
        }
        Ok(Self {
            coords: self.coords / (-q).sqrt(),
        })
    }

    pub fn transform(&self, m: &Isometry) -> Self {
        Self {
            coords: self.coords * m.m,
        }
    }

    /// Residual of `self ∝ other` with a positive factor.
    ///
    /// Returns `max|self - κ·other| / max|self|` for the least-squares `κ`,
    /// or infinity when the best `κ` is not positive.
    pub fn proportional_residual(&self, other: &Self) -> f64 {
        proportional_residual(self.coords.as_slice(), other.coords.as_slice())
    }

    /// Inhomogeneous coordinates `(x1/x0, x2/x0, x3/x0)`.
    pub fn inhomogeneous(&self) -> Result<InhomogeneousCoords> {
        let x0 = self.coords[0];
        if x0 == 0.0 {
            return Err(Error::PointAtInfinity);
        }
        Ok(InhomogeneousCoords {
            x: self.coords[1] / x0,
            y: self.coords[2] / x0,
            z: self.coords[3] / x0,
        })
    }

    /// Conjugate `(x0; -x1; -x2; -x3)`; `T(X̄)` inverts `T(X)` when `Q(X) = -1`.
    pub fn conjugate(&self) -> Self {
        Self::new(
            self.coords[0],
            -self.coords[1],
            -self.coords[2],
            -self.coords[3],
        )
    }
}

impl From<InhomogeneousCoords> for ProjectivePoint {
    fn from(c: InhomogeneousCoords) -> Self {
        Self::new(1.0, c.x, c.y, c.z)
    }
}

/// Euclidean model coordinates `x = x1/x0`, `y = x2/x0`, `z = x3/x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InhomogeneousCoords {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Fibre-adapted polar coordinates: `r`, `θ` in the base plane and the fibre
/// coordinate `φ`, which is unbounded on the universal cover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperboloidCoords {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl HyperboloidCoords {
    pub fn new(r: f64, theta: f64, phi: f64) -> Self {
        Self { r, theta, phi }
    }

    /// Sheet index `k` with `φ = 2πk + φ₀`, `φ₀ ∈ (-π, π]`.
    pub fn winding(&self) -> i64 {
        ((self.phi - wrap_angle(self.phi)) / TAU).round() as i64
    }

    /// Fibre coordinate reduced to `(-π, π]`.
    pub fn principal_phi(&self) -> f64 {
        wrap_angle(self.phi)
    }
}

/// Reduces an angle to `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a.rem_euclid(TAU);
    if w > PI {
        w -= TAU;
    }
    w
}

pub fn quadratic_form(p: &ProjectivePoint) -> f64 {
    let x = &p.coords;
    -x[0] * x[0] - x[1] * x[1] + x[2] * x[2] + x[3] * x[3]
}

pub fn from_hyperboloid(c: HyperboloidCoords) -> ProjectivePoint {
    let (ch, sh) = (c.r.cosh(), c.r.sinh());
    let (sp, cp) = c.phi.sin_cos();
    let (sd, cd) = (c.theta - c.phi).sin_cos();
    ProjectivePoint::new(ch * cp, ch * sp, sh * cd, sh * sd)
}

/// Inverse of [`from_hyperboloid`]; `φ` is returned in `(-π, π]` and `θ` in
/// `(-π, π]`. On the fibre through the origin (`r = 0`) `θ` is set to 0.
pub fn to_hyperboloid(p: &ProjectivePoint) -> Result<HyperboloidCoords> {
    let n = p.normalized()?;
    let x = &n.coords;
    let phi = x[1].atan2(x[0]);
    let rho = x[2].hypot(x[3]);
    let r = rho.asinh();
    let theta = if rho == 0.0 {
        0.0
    } else {
        wrap_angle(x[3].atan2(x[2]) + phi)
    };
    Ok(HyperboloidCoords { r, theta, phi })
}

/// Foot point of the fibre through `X` in the base plane `x1 = 0`.
pub fn foot_point(p: &ProjectivePoint) -> ProjectivePoint {
    let x = &p.coords;
    ProjectivePoint::new(
        x[0] * x[0] + x[1] * x[1],
        0.0,
        x[0] * x[2] - x[1] * x[3],
        x[0] * x[3] + x[1] * x[2],
    )
}

/// A collineation preserving the polarity of signature `(- - + +)`, acting on
/// row vectors from the right and defined up to a positive factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    pub m: Matrix4<f64>,
}

impl Isometry {
    pub fn identity() -> Self {
        Self {
            m: Matrix4::identity(),
        }
    }

    pub fn from_matrix(m: Matrix4<f64>) -> Self {
        Self { m }
    }

    /// `self` followed by `other`: the matrix product `self · other`.
    pub fn then(&self, other: &Isometry) -> Self {
        Self {
            m: self.m * other.m,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        self.m
            .try_inverse()
            .map(|m| Self { m })
            .ok_or_else(|| Error::Domain("singular isometry matrix".into()))
    }

    /// `n`-fold composition by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Matrix4::identity();
        let mut base = self.m;
        while n > 0 {
            if n & 1 == 1 {
                acc *= base;
            }
            base *= base;
            n >>= 1;
        }
        Self { m: acc }
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        p.transform(self)
    }

    /// Projective residual of `self ≡ other`; infinite if the best scale is
    /// not positive.
    pub fn projective_residual(&self, other: &Isometry) -> f64 {
        proportional_residual(self.m.as_slice(), other.m.as_slice())
    }

    pub fn projectively_eq(&self, other: &Isometry, tol: f64) -> bool {
        self.projective_residual(other) < tol
    }

    /// The factor `κ` with `Q(X·M) = κ·Q(X)`, read off at the origin.
    pub fn polarity_scale(&self) -> f64 {
        -self.apply(&ProjectivePoint::origin()).quadratic_form()
    }
}

impl Mul for Isometry {
    type Output = Isometry;

    fn mul(self, rhs: Isometry) -> Isometry {
        self.then(&rhs)
    }
}

impl Mul<&Isometry> for &Isometry {
    type Output = Isometry;

    fn mul(self, rhs: &Isometry) -> Isometry {
        self.then(rhs)
    }
}

fn proportional_residual(a: &[f64], b: &[f64]) -> f64 {
    let ab: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let bb: f64 = b.iter().map(|y| y * y).sum();
    let amax = a.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if bb == 0.0 || amax == 0.0 {
        return if bb == 0.0 && amax == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let kappa = ab / bb;
    if !(kappa > 0.0) {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .fold(0.0_f64, |m, (x, y)| m.max((x - kappa * y).abs()))
        / amax
}

/// Fibre translation `S(φ)`; `S(φ)·S(ψ) = S(φ + ψ)`.
pub fn fibre_translation(phi: f64) -> Isometry {
    let (s, c) = phi.sin_cos();
    #[rustfmt::skip]
    let m = Matrix4::new(
        c,   s,   0.0, 0.0,
        -s,  c,   0.0, 0.0,
        0.0, 0.0, c,   -s,
        0.0, 0.0, s,   c,
    );
    Isometry { m }
}

fn translation_matrix(x: &ProjectivePoint) -> Matrix4<f64> {
    let (x0, x1, x2, x3) = (x.x(0), x.x(1), x.x(2), x.x(3));
    #[rustfmt::skip]
    let m = Matrix4::new(
        x0,  x1,  x2,  x3,
        -x1, x0,  x3,  -x2,
        x2,  x3,  x0,  x1,
        x3,  -x2, -x1, x0,
    );
    m
}

/// The translation `T` with `E0 · T = X` (for `X` normalized to `Q = -1`).
pub fn translation_to(x: &ProjectivePoint) -> Result<Isometry> {
    let n = x.normalized()?;
    Ok(Isometry {
        m: translation_matrix(&n),
    })
}

/// Inverse of [`translation_to`]: maps `X` back to the origin.
///
/// Built from the conjugate point; `T(X)·T(X̄) = -Q(X)·I = I` after
/// normalization.
pub fn translation_from(x: &ProjectivePoint) -> Result<Isometry> {
    let n = x.normalized()?;
    Ok(Isometry {
        m: translation_matrix(&n.conjugate()),
    })
}

/// Rotation `R_{E0}(ω)` about the fibre line through the origin.
pub fn rotation_origin(omega: f64) -> Isometry {
    let (s, c) = omega.sin_cos();
    #[rustfmt::skip]
    let m = Matrix4::new(
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, c,   s,
        0.0, 0.0, -s,  c,
    );
    Isometry { m }
}

/// Rotation `R_X(ω) = T⁻¹ · R_{E0}(ω) · T` about the fibre line through `X`.
pub fn rotation_about_fibre(x: &ProjectivePoint, omega: f64) -> Result<Isometry> {
    let t = translation_to(x)?;
    let t_inv = translation_from(x)?;
    Ok(t_inv.then(&rotation_origin(omega)).then(&t))
}

/// Fibre translation conjugated to act along the fibre through `X`.
pub fn fibre_translation_at(x: &ProjectivePoint, phi: f64) -> Result<Isometry> {
    let t = translation_to(x)?;
    let t_inv = translation_from(x)?;
    Ok(t_inv.then(&fibre_translation(phi)).then(&t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sample_points() -> Vec<ProjectivePoint> {
        let mut pts = Vec::new();
        for i in 0..6 {
            for j in 0..5 {
                for k in 0..4 {
                    let c = HyperboloidCoords::new(
                        0.3 * i as f64,
                        -3.0 + 1.3 * j as f64,
                        -1.4 + 0.9 * k as f64,
                    );
                    pts.push(from_hyperboloid(c));
                }
            }
        }
        pts
    }

    #[test]
    fn quadratic_form_examples() {
        assert_eq!(ProjectivePoint::origin().quadratic_form(), -1.0);
        assert_eq!(
            ProjectivePoint::new(0.0, 0.0, 1.0, 0.0).quadratic_form(),
            1.0
        );
        let p = ProjectivePoint::new(1f64.cosh(), 0.0, 1f64.sinh(), 0.0);
        assert_abs_diff_eq!(p.quadratic_form(), -1.0, epsilon = 1e-14);
    }

    #[test]
    fn fibre_translation_group() {
        assert_eq!(fibre_translation(0.0).m, Matrix4::identity());
        let e = ProjectivePoint::origin().transform(&fibre_translation(PI / 2.0));
        assert!(e.proportional_residual(&ProjectivePoint::new(0.0, 1.0, 0.0, 0.0)) < 1e-15);
        let a = fibre_translation(0.7) * fibre_translation(-1.9);
        assert!(a.projectively_eq(&fibre_translation(-1.2), 1e-15));
        assert!(fibre_translation(TAU).projectively_eq(&Isometry::identity(), 1e-15));
        // the inhomogeneous form with x = 0 and tan φ = 1
        let (y, z) = (0.2, -0.35);
        let p = ProjectivePoint::new(1.0, 0.0, y, z).transform(&fibre_translation(PI / 4.0));
        let h = p.inhomogeneous().unwrap();
        assert_abs_diff_eq!(h.x, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(h.y, y + z, epsilon = 1e-14);
        assert_abs_diff_eq!(h.z, z - y, epsilon = 1e-14);
    }

    #[test]
    fn translation_maps_origin_and_inverts() {
        assert_eq!(
            translation_to(&ProjectivePoint::origin()).unwrap().m,
            Matrix4::identity()
        );
        let x = ProjectivePoint::new(1f64.cosh(), 0.0, 1f64.sinh(), 0.0);
        let t = translation_to(&x).unwrap();
        assert!(
            ProjectivePoint::origin()
                .transform(&t)
                .proportional_residual(&x)
                < 1e-15
        );
        for p in sample_points() {
            let t = translation_to(&p).unwrap();
            let ti = translation_from(&p).unwrap();
            assert!((t * ti).projectively_eq(&Isometry::identity(), 1e-12));
            let img = ProjectivePoint::origin().transform(&t);
            assert!(img.proportional_residual(&p) < 1e-13);
        }
    }

    #[test]
    fn translation_rejects_exterior() {
        let e2 = ProjectivePoint::new(0.0, 0.0, 1.0, 0.0);
        assert!(matches!(
            translation_to(&e2),
            Err(Error::ExteriorPoint { .. })
        ));
        assert!(rotation_about_fibre(&e2, 0.3).is_err());
    }

    #[test]
    fn rotation_origin_examples() {
        assert_eq!(rotation_origin(0.0).m, Matrix4::identity());
        let rr = rotation_origin(0.8) * rotation_origin(-0.8);
        assert!(rr.projectively_eq(&Isometry::identity(), 1e-15));
        // (1;0;y;z) -> (1;0; y cos ω - z sin ω; y sin ω + z cos ω)
        let w: f64 = 0.5;
        let p = ProjectivePoint::new(1.0, 0.0, 0.3, 0.1).transform(&rotation_origin(w));
        assert_abs_diff_eq!(p.x(2), 0.3 * w.cos() - 0.1 * w.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.x(3), 0.3 * w.sin() + 0.1 * w.cos(), epsilon = 1e-15);
    }

    #[test]
    fn rotation_about_fibre_fixes_and_has_order() {
        let o = ProjectivePoint::origin();
        let r = rotation_about_fibre(&o, 1.1).unwrap();
        assert!(r.projectively_eq(&rotation_origin(1.1), 1e-15));
        for p in sample_points().into_iter().step_by(7) {
            let r = rotation_about_fibre(&p, 0.9).unwrap();
            assert!(p.transform(&r).proportional_residual(&p) < 1e-12);
            for q in 3..=10u32 {
                let rq = rotation_about_fibre(&p, TAU / q as f64).unwrap();
                assert!(rq.pow(q).projectively_eq(&Isometry::identity(), 1e-10));
            }
        }
    }

    #[test]
    fn rotation_commutes_with_own_fibre_translation() {
        for p in sample_points().into_iter().step_by(11) {
            let r = rotation_about_fibre(&p, 0.77).unwrap();
            let s = fibre_translation_at(&p, -0.4).unwrap();
            assert!((r * s).projectively_eq(&(s * r), 1e-11));
        }
    }

    #[test]
    fn foot_point_examples() {
        let p = ProjectivePoint::new(1.3, 0.0, 0.4, -0.2);
        assert!(foot_point(&p).proportional_residual(&p) < 1e-15);
        let f = ProjectivePoint::origin().transform(&fibre_translation(0.9));
        assert!(foot_point(&f).proportional_residual(&ProjectivePoint::origin()) < 1e-15);
        for p in sample_points() {
            let z = foot_point(&p);
            assert_eq!(z.x(1), 0.0);
            let phi = p.x(1).atan2(p.x(0));
            assert!(
                z.transform(&fibre_translation(phi))
                    .proportional_residual(&p)
                    < 1e-12
            );
            assert!(foot_point(&z).proportional_residual(&z) < 1e-12);
        }
    }

    #[test]
    fn hyperboloid_round_trip() {
        let p = from_hyperboloid(HyperboloidCoords::new(0.0, 1.0, 0.0));
        assert_eq!(p, ProjectivePoint::origin());
        let p = from_hyperboloid(HyperboloidCoords::new(1.0, 0.0, 0.0));
        assert_abs_diff_eq!(p.x(0), 1f64.cosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.x(2), 1f64.sinh(), epsilon = 1e-15);
        for p in sample_points() {
            assert_abs_diff_eq!(p.quadratic_form(), -1.0, epsilon = 1e-12);
            let c = to_hyperboloid(&p).unwrap();
            let back = from_hyperboloid(c);
            assert!((back.coords - p.coords).abs().max() < 1e-12);
        }
        let c = HyperboloidCoords::new(0.4, 0.3, 0.2 + 2.0 * TAU);
        assert_eq!(c.winding(), 2);
        assert_abs_diff_eq!(c.principal_phi(), 0.2, epsilon = 1e-14);
    }

    #[test]
    fn inhomogeneous_matches_parametrization() {
        let (r, th, ph) = (0.6_f64, 1.2_f64, 0.3_f64);
        let h = from_hyperboloid(HyperboloidCoords::new(r, th, ph))
            .inhomogeneous()
            .unwrap();
        assert_abs_diff_eq!(h.x, ph.tan(), epsilon = 1e-14);
        assert_abs_diff_eq!(h.y, r.tanh() * (th - ph).cos() / ph.cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(h.z, r.tanh() * (th - ph).sin() / ph.cos(), epsilon = 1e-14);
        assert_eq!(
            ProjectivePoint::new(0.0, 1.0, 0.0, 0.0).inhomogeneous(),
            Err(Error::PointAtInfinity)
        );
    }

    #[test]
    fn generated_isometries_scale_polarity_uniformly() {
        let pts = sample_points();
        let words = [
            fibre_translation(0.4) * translation_to(&pts[17]).unwrap(),
            rotation_about_fibre(&pts[40], 2.0).unwrap() * fibre_translation(-2.5),
            translation_from(&pts[77]).unwrap() * rotation_origin(0.3),
        ];
        for w in &words {
            let k = w.polarity_scale();
            assert!(k > 0.0);
            for p in &pts {
                let ratio = p.transform(w).quadratic_form() / p.quadratic_form();
                assert!((ratio - k).abs() < 1e-10 * k);
            }
        }
    }
}
