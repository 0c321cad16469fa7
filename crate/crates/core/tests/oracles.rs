//! Independent oracles for the numerical layers, and property tests.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sl2r::ball::ball_volume;
use sl2r::geodesics::{
    exp_map, exp_map_with_jacobian, metric_norm_sq, GeographicalCoords, ToleranceConfig,
};
use sl2r::prism::{prism_volume, sector_volume, validate};
use sl2r::projective::{
    fibre_translation, from_hyperboloid, rotation_origin, translation_to, wrap_angle,
    HyperboloidCoords,
};
use sl2r::{distance, Error};

/// Geodesics from the origin in closed form, `(r, θ - λ, φ)` at arc length
/// `s` for inclination `α`.
fn closed_form(s: f64, alpha: f64) -> (f64, f64, f64) {
    let (sa, ca) = alpha.sin_cos();
    let c2 = (2.0 * alpha).cos();
    let (r, f) = if c2.abs() < 1e-300 {
        let u = s * FRAC_PI_4.cos();
        (u.asinh(), u.atan())
    } else if c2 > 0.0 {
        let k = c2.sqrt();
        (
            (ca / k * (s * k).sinh()).asinh(),
            (sa / k * (s * k).tanh()).atan(),
        )
    } else {
        let k = (-c2).sqrt();
        (
            (ca / k * (s * k).sin()).asinh(),
            (sa / k * (s * k).tan()).atan(),
        )
    };
    (r, -f, 2.0 * s * sa - f)
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

#[test]
fn exp_map_matches_closed_form() {
    let mut worst = 0.0_f64;
    for i in 0..=16 {
        let alpha = FRAC_PI_2 * i as f64 / 16.0;
        for s in [0.05, 0.3, 0.8, 1.2, 1.5] {
            let e = exp_map(GeographicalCoords::new(s, 0.0, alpha), &tol()).unwrap();
            let (r, th, ph) = closed_form(s, alpha);
            worst = worst
                .max((e.coords.r - r).abs())
                .max(wrap_angle(e.coords.theta - th).abs())
                .max((e.coords.phi - ph).abs());
        }
    }
    assert!(worst < 1e-9, "{worst:e}");
}

#[test]
fn mirrored_inclination_mirrors_the_fibre_coordinate() {
    for alpha in [0.2, 0.9, 1.4] {
        let up = exp_map(GeographicalCoords::new(1.0, 0.0, alpha), &tol()).unwrap();
        let down = exp_map(GeographicalCoords::new(1.0, 0.0, -alpha), &tol()).unwrap();
        assert!((up.coords.r - down.coords.r).abs() < 1e-12);
        assert!((up.coords.phi + down.coords.phi).abs() < 1e-12);
        assert!((up.coords.theta + down.coords.theta).abs() < 1e-12);
    }
}

/// `∂φ/∂α` of the closed form by a fourth-order central difference.
fn closed_phi_alpha(s: f64, alpha: f64) -> f64 {
    let h = 1e-4;
    let f = |a: f64| closed_form(s, a).2;
    (f(alpha - 2.0 * h) - 8.0 * f(alpha - h) + 8.0 * f(alpha + h) - f(alpha + 2.0 * h)) / (12.0 * h)
}

/// Composite Gauss–Legendre (5 nodes per panel).
fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 5] = [
        0.0,
        0.538_469_310_105_683_1,
        -0.538_469_310_105_683_1,
        0.906_179_845_938_664,
        -0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let c = a + h * (i as f64 + 0.5);
            X.iter()
                .zip(W)
                .map(|(x, w)| w * f(c + 0.5 * h * x))
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

/// The ball is the image of `[0, ρ] × [-π/2, π/2]`; by Green's theorem its
/// volume is the boundary integral of `½ sinh²r dφ` along `s = ρ`, the other
/// edges contributing nothing (`φ ≡ 0` at `α = 0`, `r ≡ 0` at `α = π/2`).
fn green_volume(rho: f64) -> f64 {
    let f =
        |alpha: f64| 0.5 * closed_form(rho, alpha).0.sinh().powi(2) * closed_phi_alpha(rho, alpha);
    4.0 * PI
        * (gauss_legendre(f, 0.0, FRAC_PI_4, 200) + gauss_legendre(f, FRAC_PI_4, FRAC_PI_2, 200))
}

#[test]
fn ball_volume_matches_boundary_integral() {
    for rho in [0.141564, 0.530638, 1.106311, 1.4] {
        let v = ball_volume(rho, &tol()).unwrap().volume;
        let g = green_volume(rho);
        assert!((v / g - 1.0).abs() < 1e-8, "rho {rho}: {v} vs {g}");
    }
}

#[test]
fn ball_volume_matches_monte_carlo() {
    // uniform (s, α) samples weighted by the volume density of the closed form
    let rho = 0.3;
    let n = 40_000;
    let mut rng = StdRng::seed_from_u64(11);
    let h = 1e-5;
    let density = |s: f64, a: f64| {
        let (r, _, _) = closed_form(s, a);
        let d = |ds: f64, da: f64| {
            let (r, _, p) = closed_form(s + ds, a + da);
            (r, p)
        };
        let ((rsp, psp), (rsm, psm)) = (d(h, 0.0), d(-h, 0.0));
        let ((rap, pap), (ram, pam)) = (d(0.0, h), d(0.0, -h));
        let jac = ((rsp - rsm) * (pap - pam) - (rap - ram) * (psp - psm)) / (4.0 * h * h);
        0.5 * (2.0 * r).sinh() * jac.abs()
    };
    let samples: Vec<f64> = (0..n)
        .map(|_| {
            let s = rng.random_range(h..rho);
            let a = rng.random_range(h..FRAC_PI_2 - h);
            4.0 * PI * rho * FRAC_PI_2 * density(s, a)
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let se = (var / n as f64).sqrt();
    let v = ball_volume(rho, &tol()).unwrap().volume;
    assert!((v - mean).abs() < 3.0 * se, "{v} vs {mean} ± {se}");
}

#[test]
fn ball_volume_is_monotone() {
    let vols: Vec<f64> = [0.1, 0.2, 0.4, 0.8, 1.2, 1.5]
        .iter()
        .map(|&r| ball_volume(r, &tol()).unwrap().volume)
        .collect();
    assert!(vols.windows(2).all(|w| w[0] < w[1]), "{vols:?}");
}

#[test]
fn prism_volume_matches_curve_parametrization() {
    // ∫ ½ sinh² r dθ rewritten as an integral over the curve parameter t
    for (p, q) in [(3, 7), (6, 5), (29, 3)] {
        let pp = validate(p, q).unwrap();
        let curve = pp.side_curve();
        let integrand = |t: f64| {
            let (y, z) = curve.yz(t);
            let rr = y * y + z * z;
            let h = 1e-6;
            let (y1, z1) = curve.yz(t + h);
            let (y0, z0) = curve.yz(t - h);
            let dtheta = (z1.atan2(y1) - z0.atan2(y0)) / (2.0 * h);
            0.5 * rr / (1.0 - rr) * dtheta
        };
        let by_t = p as f64 * gauss_legendre(integrand, 0.0, 1.0, 400);
        let v = prism_volume(&pp, 1.0, 1e-12).unwrap();
        assert!((v / by_t - 1.0).abs() < 1e-8, "({p},{q}) {v} vs {by_t}");
    }
}

#[test]
fn triangle_inequality_on_random_triples() {
    let mut rng = StdRng::seed_from_u64(3);
    let point = |rng: &mut StdRng| {
        from_hyperboloid(HyperboloidCoords::new(
            rng.random_range(0.0..0.35),
            rng.random_range(-PI..PI),
            rng.random_range(-0.3..0.3),
        ))
    };
    for _ in 0..30 {
        let (a, b, c) = (point(&mut rng), point(&mut rng), point(&mut rng));
        let ab = distance(&a, &b, &tol()).unwrap();
        let bc = distance(&b, &c, &tol()).unwrap();
        let ac = distance(&a, &c, &tol()).unwrap();
        assert!(ac <= ab + bc + 1e-9, "{ac} > {ab} + {bc}");
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(matches!(validate(3, 6), Err(Error::InvalidParams { .. })));
    assert!(matches!(
        sector_volume(&validate(3, 7).unwrap(), -0.1, 1e-10),
        Err(Error::Domain(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn validity_is_the_integer_bound(p in -2i64..40, q in -2i64..40) {
        let expected = p >= 3 && q >= 1 && q * (p - 2) > 2 * p;
        prop_assert_eq!(validate(p, q).is_ok(), expected);
    }

    #[test]
    fn side_curve_starts_at_vertex_and_closes(p in 3i64..60, q in 3i64..60) {
        prop_assume!(validate(p, q).is_ok());
        let pp = validate(p, q).unwrap();
        let curve = pp.side_curve();
        let c0 = curve.point(0.0);
        prop_assert!((c0.y.hypot(c0.z) - pp.b).abs() < 1e-12);
        let end = curve.point(1.0);
        let rot = curve.rotated_point(1, 0.0);
        prop_assert!((end.y - rot.y).abs() < 1e-10 && (end.z - rot.z).abs() < 1e-10);
    }

    #[test]
    fn prism_volume_is_linear_in_height(p in 3i64..30, q in 3i64..30, h in 0.01f64..3.0) {
        prop_assume!(validate(p, q).is_ok());
        let pp = validate(p, q).unwrap();
        let v1 = prism_volume(&pp, h, 1e-12).unwrap();
        let v2 = prism_volume(&pp, 1.0, 1e-12).unwrap();
        prop_assert!((v1 - h * v2).abs() < 1e-12 * v1.max(1.0));
    }

    #[test]
    fn geodesics_keep_unit_speed(s in 0.001f64..1.5, alpha in -FRAC_PI_2..FRAC_PI_2, lambda in -PI..PI) {
        let e = exp_map(GeographicalCoords::new(s, lambda, alpha), &tol()).unwrap();
        prop_assert!((metric_norm_sq(e.coords.r, &e.tangent) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn longitude_only_shifts_theta(s in 0.01f64..1.5, alpha in 0.0f64..FRAC_PI_2, lambda in -PI..PI) {
        let a = exp_map(GeographicalCoords::new(s, 0.0, alpha), &tol()).unwrap();
        let b = exp_map(GeographicalCoords::new(s, lambda, alpha), &tol()).unwrap();
        prop_assert!((a.coords.r - b.coords.r).abs() < 1e-10);
        prop_assert!((a.coords.phi - b.coords.phi).abs() < 1e-10);
        if a.coords.r > 1e-6 {
            prop_assert!(wrap_angle(b.coords.theta - a.coords.theta - lambda).abs() < 1e-10);
        }
    }

    #[test]
    fn variational_jacobian_matches_closed_form(s in 0.05f64..1.5, alpha in 0.01f64..1.56) {
        let d = exp_map_with_jacobian(s, 0.0, alpha, &tol()).unwrap();
        let h = 1e-5;
        let r_a = (closed_form(s, alpha + h).0 - closed_form(s, alpha - h).0) / (2.0 * h);
        let p_a = (closed_form(s, alpha + h).2 - closed_form(s, alpha - h).2) / (2.0 * h);
        prop_assert!((d.jacobian[(0, 1)] - r_a).abs() < 1e-7);
        prop_assert!((d.jacobian[(1, 1)] - p_a).abs() < 1e-7);
    }

    #[test]
    fn distance_is_symmetric_and_invariant(
        r1 in 0.0f64..0.5, t1 in -PI..PI, f1 in -0.4f64..0.4,
        r2 in 0.0f64..0.5, t2 in -PI..PI, f2 in -0.4f64..0.4,
        w in -PI..PI, psi in -0.5f64..0.5,
    ) {
        let p = from_hyperboloid(HyperboloidCoords::new(r1, t1, f1));
        let q = from_hyperboloid(HyperboloidCoords::new(r2, t2, f2));
        let d = distance(&p, &q, &tol()).unwrap();
        prop_assert!((d - distance(&q, &p, &tol()).unwrap()).abs() < 1e-9);
        let m = (rotation_origin(w) * fibre_translation(psi))
            * translation_to(&from_hyperboloid(HyperboloidCoords::new(0.3, w, psi))).unwrap();
        let dm = distance(&p.transform(&m), &q.transform(&m), &tol()).unwrap();
        prop_assert!((d - dm).abs() < 1e-8);
    }
}
