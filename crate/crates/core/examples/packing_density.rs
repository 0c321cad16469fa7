// Optimal ball packing of one prism tiling, printed as JSON.
//
// Run with `cargo run --release --example packing_density -- 29 3`.

use sl2r::{packing_density, validate, ToleranceConfig};

pub fn run_example_for(p: i64, q: i64) -> Result<(), Box<dyn std::error::Error>> {
    let result = packing_density(&validate(p, q)?, &ToleranceConfig::default())?;
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run_example_for(29, 3)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    match args[..] {
        [p, q] => run_example_for(p, q),
        _ => run_example(),
    }
}
