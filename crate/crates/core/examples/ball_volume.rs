// Volumes of geodesic balls compared with their Euclidean counterparts.
//
// Run with `cargo run --example ball_volume`.

use std::f64::consts::PI;

use sl2r::{ball_volume, ToleranceConfig};

pub fn run_example() -> sl2r::Result<()> {
    let tol = ToleranceConfig::default();
    println!("     rho        volume   est. error   vol / (4/3 pi rho^3)");
    for rho in [0.01, 0.1, 0.141564, 0.3, 0.530638, 1.0, 1.5] {
        let v = ball_volume(rho, &tol)?;
        println!(
            "{rho:8.6} {:13.9} {:12.2e} {:12.6}",
            v.volume,
            v.est_error,
            v.volume / (4.0 / 3.0 * PI * rho.powi(3))
        );
    }
    match ball_volume(PI / 2.0, &tol) {
        Err(e) => println!("rho = pi/2: {e}"),
        Ok(_) => unreachable!("radius pi/2 is rejected"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> sl2r::Result<()> {
    run_example()
}
