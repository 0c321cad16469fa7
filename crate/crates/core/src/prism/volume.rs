use super::PrismParams;
use crate::error::{Error, Result};
use crate::numeric::quadrature::{integrate, QuadOptions};

/// `∫_{θ₁}^{θ₂} ¼(cosh 2r(θ) - 1) dθ` along the side curve.
pub fn sector_integral(
    params: &PrismParams,
    theta1: f64,
    theta2: f64,
    rel_tol: f64,
) -> Result<f64> {
    let polar = params.side_curve().polar()?;
    let opts = QuadOptions {
        rel_tol,
        abs_tol: 1e-15,
        max_intervals: 2000,
    };
    Ok(integrate(|th| polar.sector_density(th), theta1, theta2, &opts)?.value)
}

/// Volume of the sector over one side curve, between heights `0` and `Ψ`.
pub fn sector_volume(params: &PrismParams, psi: f64, rel_tol: f64) -> Result<f64> {
    if !(psi >= 0.0) {
        return Err(Error::Domain(format!("prism height {psi} is negative")));
    }
    if psi == 0.0 {
        return Ok(0.0);
    }
    let theta_end = 2.0 * std::f64::consts::PI / params.p as f64;
    Ok(psi * sector_integral(params, 0.0, theta_end, rel_tol)?)
}

/// Volume of the bounded prism of height `Ψ`: `p` congruent sectors.
pub fn prism_volume(params: &PrismParams, psi: f64, rel_tol: f64) -> Result<f64> {
    Ok(params.p as f64 * sector_volume(params, psi, rel_tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prism::validate;
    use std::f64::consts::PI;

    #[test]
    fn zero_height() {
        let pp = validate(3, 7).unwrap();
        assert_eq!(prism_volume(&pp, 0.0, 1e-10).unwrap(), 0.0);
        assert!(sector_volume(&pp, -1.0, 1e-10).is_err());
    }

    #[test]
    fn half_sectors_agree() {
        for (p, q) in [(3, 7), (5, 4), (29, 3)] {
            let pp = validate(p, q).unwrap();
            let mid = PI / p as f64;
            let whole = sector_integral(&pp, 0.0, 2.0 * mid, 1e-12).unwrap();
            let left = sector_integral(&pp, 0.0, mid, 1e-12).unwrap();
            let right = sector_integral(&pp, mid, 2.0 * mid, 1e-12).unwrap();
            assert!((left - right).abs() < 1e-11 * whole);
            assert!((left + right - whole).abs() < 1e-11 * whole);
        }
    }

    #[test]
    fn linear_in_height() {
        let pp = validate(4, 5).unwrap();
        let v1 = sector_volume(&pp, 0.3, 1e-12).unwrap();
        let v2 = sector_volume(&pp, 0.6, 1e-12).unwrap();
        assert!((v2 - 2.0 * v1).abs() < 1e-14);
    }

    #[test]
    fn table_values() {
        let v = prism_volume(&validate(3, 7).unwrap(), 0.283128, 1e-10).unwrap();
        assert!((v / 0.031767 - 1.0).abs() < 1e-4, "{v}");
        let v = prism_volume(&validate(29, 3).unwrap(), 2.0 * 1.106311, 1e-10).unwrap();
        assert!((v / 13.323054 - 1.0).abs() < 1e-4, "{v}");
    }
}
