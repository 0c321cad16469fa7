// The exponential map at the origin and its inversion, the geodesic distance.
//
// Run with `cargo run --example geodesic_distance`.

use sl2r::geodesics::{distance_from_origin, exp_map, GeographicalCoords, ToleranceConfig};
use sl2r::projective::{fibre_translation, from_hyperboloid, HyperboloidCoords, ProjectivePoint};

pub fn run_example() -> sl2r::Result<()> {
    let tol = ToleranceConfig::default();

    println!("    s  lambda   alpha |        r    theta      phi |  distance");
    for (s, lambda, alpha) in [
        (0.5, 0.0, 0.0),
        (0.9, 1.0, 0.4),
        (1.2, -2.0, 0.785),
        (1.4, 2.5, -1.2),
    ] {
        let e = exp_map(GeographicalCoords::new(s, lambda, alpha), &tol)?;
        let back = distance_from_origin(e.coords, None, &tol)?;
        println!(
            "{s:5.2} {lambda:7.3} {alpha:7.3} | {:8.5} {:8.5} {:8.5} | {:9.6}",
            e.coords.r, e.coords.theta, e.coords.phi, back.distance
        );
    }

    // points on the fibre through the origin are reached along the fibre
    let q = ProjectivePoint::origin().transform(&fibre_translation(1.1));
    println!(
        "d(E0, E0·S(1.1)) = {:.12}",
        sl2r::distance(&ProjectivePoint::origin(), &q, &tol)?
    );

    let p = from_hyperboloid(HyperboloidCoords::new(0.3, 0.2, 0.1));
    let q = from_hyperboloid(HyperboloidCoords::new(0.6, 2.0, -0.4));
    println!(
        "d(P, Q) = {:.9}, d(Q, P) = {:.9}",
        sl2r::distance(&p, &q, &tol)?,
        sl2r::distance(&q, &p, &tol)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> sl2r::Result<()> {
    run_example()
}
