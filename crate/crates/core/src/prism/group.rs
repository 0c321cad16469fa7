use std::f64::consts::PI;

use super::PrismParams;
use crate::error::{Error, Result};
use crate::projective::{
    fibre_translation, from_hyperboloid, rotation_about_fibre, rotation_origin, translation_from,
    translation_to, wrap_angle, HyperboloidCoords, Isometry, ProjectivePoint,
};

/// Relation residual above which a generator set is rejected.
pub const RELATION_TOL: f64 = 1e-9;

/// Generators of the prism tiling group `pq2₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupGenerators {
    /// p-rotation about the fibre through the origin.
    pub a: Isometry,
    /// q-rotation about the fibre through the vertex `A₁`.
    pub b_rot: Isometry,
    /// Screw motion `b·a·b`.
    pub s: Isometry,
    /// `a·b·a·b`, a fibre translation.
    pub tau: Isometry,
    /// Signs of the rotation angles of `a` and `b_rot`.
    pub orientation: (i8, i8),
    /// `b_rot = conj⁻¹ · R_{E0}(ω_b) · conj` with `E0 · conj = A₁`.
    pub b_conjugator: Isometry,
    pub b_conjugator_inv: Isometry,
    pub b_angle: f64,
}

impl GroupGenerators {
    /// `b_rot^k`, multiplied out as `conj⁻¹ · R^k · conj`.
    ///
    /// `b_rot` has the double eigenvalue 1, so rounding in its entries moves
    /// eigenvalues by about `√ε` and a naive power of order 1000 drifts by
    /// `1e-5`. Cancelling the inner `conj · conj⁻¹` pairs keeps the error
    /// linear in `k`.
    pub fn b_pow(&self, k: u32) -> Isometry {
        let mut r = Isometry::identity();
        let step = rotation_origin(self.b_angle);
        for _ in 0..k {
            r = r * step;
        }
        (self.b_conjugator_inv * r) * self.b_conjugator
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub p: u32,
    pub q: u32,
    /// Named residuals, in a fixed order.
    pub residuals: Vec<(&'static str, f64)>,
    /// Fibre parameter of `τ`, wrapped to `(-π, π]`.
    pub phi_tau: f64,
    /// `π - 2π/p - 2π/q`.
    pub phi_tau_expected: f64,
    pub orientation: (i8, i8),
}

impl RelationReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, &(_, r)| m.max(r))
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual() < tol
    }
}

/// The vertex `A₁` of the base figure: radius `artanh b` on the polar axis.
pub fn vertex_a1(params: &PrismParams) -> ProjectivePoint {
    from_hyperboloid(HyperboloidCoords::new(params.b.atanh(), 0.0, 0.0))
}

fn build(params: &PrismParams, sa: i8, sb: i8) -> Result<GroupGenerators> {
    let a = rotation_origin(sa as f64 * 2.0 * PI / params.p as f64);
    let a1 = vertex_a1(params);
    let b_angle = sb as f64 * 2.0 * PI / params.q as f64;
    let b_rot = rotation_about_fibre(&a1, b_angle)?;
    let s = (b_rot * a) * b_rot;
    let tau = (a * b_rot) * (a * b_rot);
    Ok(GroupGenerators {
        a,
        b_rot,
        s,
        tau,
        orientation: (sa, sb),
        b_conjugator: translation_to(&a1)?,
        b_conjugator_inv: translation_from(&a1)?,
        b_angle,
    })
}

/// Fibre parameter read off `M ≡ S(φ)`, and the residual of that identification.
fn as_fibre_translation(m: &Isometry) -> (f64, f64) {
    let phi = m.m[(0, 1)].atan2(m.m[(0, 0)]);
    (phi, m.projective_residual(&fibre_translation(phi)))
}

fn report(params: &PrismParams, g: &GroupGenerators) -> Result<RelationReport> {
    let id = Isometry::identity();
    let a_inv = g.a.inverse()?;
    let s_inv = g.s.inverse()?;
    let baba = (g.b_rot * g.a) * (g.b_rot * g.a);
    let (phi_tau, fibre_res) = as_fibre_translation(&g.tau);
    let expected = PI - 2.0 * PI / params.p as f64 - 2.0 * PI / params.q as f64;
    let residuals = vec![
        ("a^p", g.a.pow(params.p).projective_residual(&id)),
        ("b^q", g.b_pow(params.q).projective_residual(&id)),
        (
            "a s a^-1 s^-1",
            ((g.a * g.s) * (a_inv * s_inv)).projective_residual(&id),
        ),
        (
            "b a b s^-1",
            ((g.b_rot * g.a) * (g.b_rot * s_inv)).projective_residual(&id),
        ),
        ("abab = baba", g.tau.projective_residual(&baba)),
        ("tau fibre translation", fibre_res),
        ("tau parameter", wrap_angle(phi_tau - expected).abs()),
    ];
    Ok(RelationReport {
        p: params.p,
        q: params.q,
        residuals,
        phi_tau: wrap_angle(phi_tau),
        phi_tau_expected: expected,
        orientation: g.orientation,
    })
}

/// Builds `a`, `b`, `s`, `τ`. The orientation `(+,+)` is tried first and the
/// others only if its relations fail.
pub fn group_generators(params: &PrismParams) -> Result<GroupGenerators> {
    let mut best: Option<(f64, GroupGenerators)> = None;
    for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let g = build(params, sa, sb)?;
        let r = report(params, &g)?.max_residual();
        if r < RELATION_TOL {
            return Ok(g);
        }
        if best.is_none_or(|(br, _)| r < br) {
            best = Some((r, g));
        }
    }
    let (r, _) = best.expect("four orientations tried");
    Err(Error::Relation {
        relation: format!("pq2_1 presentation for ({},{})", params.p, params.q),
        residual: r,
    })
}

/// Verifies the presentation `a^p = b^q = a s a⁻¹ s⁻¹ = b a b s⁻¹ = 1` and that
/// `τ = abab = baba` is the fibre translation `S(π - 2π/p - 2π/q)`.
pub fn verify_relations(params: &PrismParams) -> Result<RelationReport> {
    let g = group_generators(params)?;
    report(params, &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prism::validate;

    #[test]
    fn relations_hold_for_small_pairs() {
        for (p, q) in [
            (3, 7),
            (4, 5),
            (7, 3),
            (5, 4),
            (29, 3),
            (3, 1000),
            (8, 1000),
        ] {
            let pp = validate(p, q).unwrap();
            let rep = verify_relations(&pp).unwrap();
            assert!(rep.passed(RELATION_TOL), "{rep:?}");
            assert_eq!(rep.residuals.len(), 7);
            assert!((rep.phi_tau - rep.phi_tau_expected).abs() < 1e-9);
            assert!((rep.phi_tau_expected - pp.h_periodic).abs() < 1e-15);
        }
    }

    #[test]
    fn positive_orientation_suffices() {
        let g = group_generators(&validate(3, 7).unwrap()).unwrap();
        assert_eq!(g.orientation, (1, 1));
    }

    #[test]
    fn tau_preserves_the_origin_fibre() {
        let g = group_generators(&validate(4, 5).unwrap()).unwrap();
        let img = g.tau.apply(&ProjectivePoint::origin());
        assert!(img.x(2).abs() < 1e-12 && img.x(3).abs() < 1e-12);
    }

    #[test]
    fn generators_have_exact_orders() {
        let g = group_generators(&validate(5, 4).unwrap()).unwrap();
        let id = Isometry::identity();
        for k in 1..5 {
            assert!(g.a.pow(k).projective_residual(&id) > 1e-3);
        }
        for k in 1..4 {
            assert!(g.b_rot.pow(k).projective_residual(&id) > 1e-3);
            assert!(g.b_pow(k).projective_residual(&g.b_rot.pow(k)) < 1e-13);
        }
    }

    #[test]
    fn wrong_vertex_breaks_relations() {
        let pp = validate(3, 7).unwrap();
        let bad = PrismParams {
            b: pp.b * 1.01,
            ..pp
        };
        assert!(matches!(
            verify_relations(&bad),
            Err(Error::Relation { .. })
        ));
    }
}
