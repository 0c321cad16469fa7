// Numerical check of the presentation of the prism tiling group.
//
// Run with `cargo run --example group_relations -- 5 4`.

use sl2r::prism::{validate, verify_relations};

pub fn run_example_for(p: i64, q: i64) -> sl2r::Result<()> {
    let report = verify_relations(&validate(p, q)?)?;
    println!("({p},{q}), orientation {:?}", report.orientation);
    for (name, residual) in &report.residuals {
        println!("  {name:<22} {residual:.2e}");
    }
    println!(
        "  fibre parameter of tau {:.12} (expected {:.12})",
        report.phi_tau, report.phi_tau_expected
    );
    Ok(())
}

pub fn run_example() -> sl2r::Result<()> {
    run_example_for(3, 7)?;
    run_example_for(29, 3)
}

#[allow(dead_code)]
fn main() -> sl2r::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    match args[..] {
        [p, q] => run_example_for(p, q),
        _ => run_example(),
    }
}
