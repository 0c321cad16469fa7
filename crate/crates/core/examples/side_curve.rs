// Side curves of the base figure: points, polar form and curvature.
//
// Run with `cargo run --example side_curve`.

use std::f64::consts::PI;

use sl2r::prism::{curvature, curvature_q_limit, curve_radius, prism_volume, validate};

pub fn run_example() -> sl2r::Result<()> {
    println!("(p,q)       C_p(q)    radius");
    for q in [7, 8, 10, 1000] {
        let pp = validate(3, q)?;
        println!(
            "{:<9} {:9.6} {:9.6}",
            format!("(3,{q})"),
            curvature(&pp),
            curve_radius(&pp)
        );
    }
    println!("q -> inf:  {:9.6}", curvature_q_limit(3));

    let pp = validate(4, 6)?;
    let curve = pp.side_curve();
    let polar = curve.polar()?;
    println!("\n(4,6): b = {:.6}, Ψ = {:.6}", pp.b, pp.psi_periodic);
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let c = curve.point(t);
        println!("  t = {t:.2}: (y, z) = ({:+.6}, {:+.6})", c.y, c.z);
    }
    println!(
        "  r(0) = {:.6}, r(π/p) = {:.6}",
        polar.r(0.0),
        polar.r(PI / 4.0)
    );
    println!(
        "  prism volume at height 1: {:.6}",
        prism_volume(&pp, 1.0, 1e-12)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> sl2r::Result<()> {
    run_example()
}
