//! Self-verification suite run by the `check` command.

use std::f64::consts::PI;

use nalgebra::Matrix3;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::ball::ball_volume;
use crate::geodesics::{distance, metric_at, ToleranceConfig};
use crate::prism::{circle_through, curvature, validate, verify_relations, SideCurve};
use crate::projective::{
    fibre_translation, from_hyperboloid, rotation_origin, translation_to, HyperboloidCoords,
    Isometry, ProjectivePoint,
};

use super::{TABLE2_PAIRS, TABLE3_PAIRS};

pub const CHECK_NAMES: [&str; 5] = [
    "volume-element",
    "isometry-invariance",
    "group-relations",
    "small-ball",
    "curvature-oracle",
];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Inputs of the suite. The metric is a parameter so that a deliberately
/// wrong one can be shown to fail.
#[derive(Debug, Clone, Copy)]
pub struct CheckContext {
    pub metric: fn(f64) -> Matrix3<f64>,
    pub tol: ToleranceConfig,
    pub isometry_pairs: usize,
    pub seed: u64,
}

impl Default for CheckContext {
    fn default() -> Self {
        Self {
            metric: metric_at,
            tol: ToleranceConfig::default(),
            isometry_pairs: 20,
            seed: 0x5eed,
        }
    }
}

/// `max |√det g(r) - ½ sinh 2r|` over `n` radii in `[0, 3]`.
pub fn volume_element_residual(metric: fn(f64) -> Matrix3<f64>, n: usize) -> f64 {
    (0..n)
        .map(|i| {
            let r = 3.0 * i as f64 / (n - 1) as f64;
            let det = metric(r).determinant();
            (det.max(0.0).sqrt() - 0.5 * (2.0 * r).sinh()).abs()
        })
        .fold(0.0, f64::max)
}

pub fn random_point<R: Rng>(rng: &mut R, max_r: f64, max_phi: f64) -> ProjectivePoint {
    from_hyperboloid(HyperboloidCoords::new(
        rng.random_range(0.0..max_r),
        rng.random_range(-PI..PI),
        rng.random_range(-max_phi..max_phi),
    ))
}

/// A random product of at most `max_len` fibre translations, translations and
/// rotations about the origin fibre.
pub fn random_isometry<R: Rng>(rng: &mut R, max_len: usize) -> Isometry {
    let len = rng.random_range(1..=max_len);
    (0..len).fold(Isometry::identity(), |acc, _| {
        let letter = match rng.random_range(0..3) {
            0 => fibre_translation(rng.random_range(-0.6..0.6)),
            1 => translation_to(&random_point(rng, 0.4, 0.3)).expect("interior point"),
            _ => rotation_origin(rng.random_range(-PI..PI)),
        };
        acc * letter
    })
}

/// Curvature of a side curve from 5-point finite differences of its
/// parametrization.
pub fn finite_difference_curvature(curve: &SideCurve, t: f64, h: f64) -> f64 {
    let p = |k: f64| curve.yz(t + k * h);
    let (m2, m1, p1, p2) = (p(-2.0), p(-1.0), p(1.0), p(2.0));
    let c = curve.yz(t);
    let d1 = |f: fn((f64, f64)) -> f64| (f(m2) - 8.0 * f(m1) + 8.0 * f(p1) - f(p2)) / (12.0 * h);
    let d2 = |f: fn((f64, f64)) -> f64| {
        (-f(m2) + 16.0 * f(m1) - 30.0 * f(c) + 16.0 * f(p1) - f(p2)) / (12.0 * h * h)
    };
    let (y1, z1) = (d1(|v| v.0), d1(|v| v.1));
    let (y2, z2) = (d2(|v| v.0), d2(|v| v.1));
    (y1 * z2 - z1 * y2).abs() / (y1 * y1 + z1 * z1).powf(1.5)
}

/// Largest distance of 101 curve samples from the circle through
/// `c(0)`, `c(½)`, `c(1)`.
pub fn circle_fit_residual(curve: &SideCurve) -> f64 {
    let Some(((cx, cy), r)) = circle_through(curve.yz(0.0), curve.yz(0.5), curve.yz(1.0)) else {
        return f64::INFINITY;
    };
    (0..=100)
        .map(|i| {
            let (y, z) = curve.yz(i as f64 / 100.0);
            ((y - cx).hypot(z - cy) - r).abs()
        })
        .fold(0.0, f64::max)
}

pub const CURVATURE_SAMPLE_PAIRS: [(i64, i64); 10] = [
    (3, 7),
    (3, 10),
    (4, 5),
    (4, 1000),
    (5, 4),
    (6, 10),
    (7, 3),
    (8, 5),
    (20, 3),
    (29, 3),
];

fn check_volume_element(ctx: &CheckContext) -> CheckReport {
    let res = volume_element_residual(ctx.metric, 1000);
    CheckReport {
        name: "volume-element",
        passed: res < 1e-12,
        detail: format!("max |sqrt(det g) - sinh(2r)/2| = {res:.3e} on 1000 radii"),
    }
}

fn check_isometry_invariance(ctx: &CheckContext) -> CheckReport {
    let mut rng = StdRng::seed_from_u64(ctx.seed);
    let mut worst = 0.0_f64;
    let mut failure = None;
    for _ in 0..ctx.isometry_pairs {
        let p = random_point(&mut rng, 0.5, 0.4);
        let q = random_point(&mut rng, 0.5, 0.4);
        let m = random_isometry(&mut rng, 5);
        match (
            distance(&p, &q, &ctx.tol),
            distance(&p.transform(&m), &q.transform(&m), &ctx.tol),
        ) {
            (Ok(d), Ok(dm)) => worst = worst.max((d - dm).abs()),
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e);
                break;
            }
        }
    }
    match failure {
        Some(e) => CheckReport {
            name: "isometry-invariance",
            passed: false,
            detail: e.to_string(),
        },
        None => CheckReport {
            name: "isometry-invariance",
            passed: worst < 1e-7,
            detail: format!(
                "max |d(Pm,Qm) - d(P,Q)| = {worst:.3e} over {} pairs",
                ctx.isometry_pairs
            ),
        },
    }
}

fn check_group_relations(_: &CheckContext) -> CheckReport {
    let mut worst = 0.0_f64;
    for &(p, q) in TABLE2_PAIRS.iter().chain(TABLE3_PAIRS.iter()) {
        let pp = validate(p, q).expect("table pairs are valid");
        match verify_relations(&pp) {
            Ok(rep) => worst = worst.max(rep.max_residual()),
            Err(e) => {
                return CheckReport {
                    name: "group-relations",
                    passed: false,
                    detail: e.to_string(),
                }
            }
        }
    }
    CheckReport {
        name: "group-relations",
        passed: worst < 1e-9,
        detail: format!("max relation residual {worst:.3e} over all table pairs"),
    }
}

fn check_small_ball(ctx: &CheckContext) -> CheckReport {
    let mut ratios = Vec::new();
    for rho in [1e-2, 5e-3] {
        match ball_volume(rho, &ctx.tol) {
            Ok(v) => ratios.push(v.volume / (4.0 / 3.0 * PI * rho.powi(3))),
            Err(e) => {
                return CheckReport {
                    name: "small-ball",
                    passed: false,
                    detail: e.to_string(),
                }
            }
        }
    }
    CheckReport {
        name: "small-ball",
        passed: ratios.iter().all(|r| (r - 1.0).abs() <= 1e-3),
        detail: format!(
            "Vol/(4/3 pi rho^3) = {:.6} (rho=0.01), {:.6} (rho=0.005)",
            ratios[0], ratios[1]
        ),
    }
}

fn check_curvature(_: &CheckContext) -> CheckReport {
    let mut worst_k = 0.0_f64;
    let mut worst_fit = 0.0_f64;
    for (p, q) in CURVATURE_SAMPLE_PAIRS {
        let pp = validate(p, q).expect("sample pairs are valid");
        let curve = pp.side_curve();
        let c = curvature(&pp);
        for t in [0.25, 0.5, 0.75] {
            worst_k = worst_k.max((finite_difference_curvature(&curve, t, 1e-3) - c).abs());
        }
        worst_fit = worst_fit.max(circle_fit_residual(&curve));
    }
    CheckReport {
        name: "curvature-oracle",
        passed: worst_k < 1e-6 && worst_fit < 1e-9,
        detail: format!("max curvature error {worst_k:.3e}, circle-fit residual {worst_fit:.3e}"),
    }
}

/// Runs the checks whose names contain `filter`; `None` if nothing matches.
pub fn run_checks(filter: Option<&str>, ctx: &CheckContext) -> Option<Vec<CheckReport>> {
    type Check = fn(&CheckContext) -> CheckReport;
    let all: [(&str, Check); 5] = [
        ("volume-element", check_volume_element),
        ("isometry-invariance", check_isometry_invariance),
        ("group-relations", check_group_relations),
        ("small-ball", check_small_ball),
        ("curvature-oracle", check_curvature),
    ];
    let selected: Vec<_> = all
        .iter()
        .filter(|(name, _)| filter.is_none_or(|f| name.contains(f)))
        .collect();
    if selected.is_empty() {
        return None;
    }
    Some(selected.iter().map(|(_, check)| check(ctx)).collect())
}

/// A metric whose `θθ` entry is off by a relative `1e-6`; used to show that
/// the volume-element check is not vacuous.
pub fn perturbed_metric(r: f64) -> Matrix3<f64> {
    let mut g = metric_at(r);
    g[(1, 1)] *= 1.0 + 1e-6;
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let reports = run_checks(None, &CheckContext::default()).unwrap();
        assert_eq!(reports.len(), CHECK_NAMES.len());
        for r in reports {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn perturbed_metric_fails_volume_element() {
        let ctx = CheckContext {
            metric: perturbed_metric,
            ..CheckContext::default()
        };
        let reports = run_checks(Some("volume"), &ctx).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(!reports[0].passed);
    }

    #[test]
    fn filter_selects_by_substring() {
        let reports = run_checks(Some("group"), &CheckContext::default()).unwrap();
        assert_eq!(
            reports.iter().map(|r| r.name).collect::<Vec<_>>(),
            ["group-relations"]
        );
        assert!(run_checks(Some("nonexistent"), &CheckContext::default()).is_none());
    }

    #[test]
    fn fd_curvature_is_constant_along_the_arc() {
        let pp = validate(3, 7).unwrap();
        let curve = pp.side_curve();
        for t in [0.1, 0.25, 0.5, 0.75, 0.9] {
            assert!((finite_difference_curvature(&curve, t, 1e-3) - curvature(&pp)).abs() < 1e-6);
        }
    }

    #[test]
    fn isometry_words_preserve_the_quadratic_form() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_isometry(&mut rng, 5);
            let x = random_point(&mut rng, 1.0, 1.0).normalized().unwrap();
            let y = x.transform(&m);
            assert!((y.quadratic_form() / m.polarity_scale() + 1.0).abs() < 1e-12);
        }
    }
}
