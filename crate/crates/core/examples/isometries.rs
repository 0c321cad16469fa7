// Points of the projective model and the isometries acting on them.
//
// Run with `cargo run --example isometries`.

use sl2r::projective::{
    fibre_translation, foot_point, from_hyperboloid, rotation_about_fibre, to_hyperboloid,
    translation_from, translation_to, HyperboloidCoords, Isometry, ProjectivePoint,
};

pub fn run_example() -> sl2r::Result<()> {
    let x = from_hyperboloid(HyperboloidCoords::new(0.7, 0.4, -0.3));
    println!("X = {:?}, Q(X) = {:.12}", x.coords, x.quadratic_form());

    // T(X) carries the origin to X, its conjugate brings X back
    let t = translation_to(&x)?;
    let t_inv = translation_from(&x)?;
    let origin = ProjectivePoint::origin();
    println!(
        "E0·T ~ X:      residual {:.2e}",
        origin.transform(&t).proportional_residual(&x)
    );
    println!(
        "X·T⁻¹ ~ E0:    residual {:.2e}",
        x.transform(&t_inv).proportional_residual(&origin)
    );

    // fibre translations shift φ and keep the foot point
    let y = x.transform(&fibre_translation(0.5));
    let (hx, hy) = (to_hyperboloid(&x)?, to_hyperboloid(&y)?);
    println!("φ: {:.6} -> {:.6}", hx.phi, hy.phi);
    println!(
        "foot points agree: residual {:.2e}",
        foot_point(&x).proportional_residual(&foot_point(&y))
    );

    // a rotation of order 5 about the fibre through X
    let r = rotation_about_fibre(&x, 2.0 * std::f64::consts::PI / 5.0)?;
    println!(
        "R_X(2π/5)^5 ~ 1: residual {:.2e}",
        r.pow(5).projective_residual(&Isometry::identity())
    );
    println!(
        "R_X fixes X:     residual {:.2e}",
        x.transform(&r).proportional_residual(&x)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> sl2r::Result<()> {
    run_example()
}
