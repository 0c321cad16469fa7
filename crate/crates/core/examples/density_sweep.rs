// Densities along `q = 3` and the pair of largest density.
//
// Run with `cargo run --release --example density_sweep`.

use sl2r::packing::{argmax_density, sweep};
use sl2r::ToleranceConfig;

pub fn run_example_range(from: i64, to: i64) -> sl2r::Result<()> {
    let ps: Vec<i64> = (from..=to).collect();
    let rows = sweep(&ps, &[3], &ToleranceConfig::default());
    let mut ok = Vec::new();
    for row in rows {
        match row.outcome {
            Ok(r) => {
                println!(
                    "({:>2},3)  rho {:.6}  density {:.7}",
                    r.p, r.rho_opt, r.density
                );
                ok.push(r);
            }
            Err(e) => println!("({:>2},3)  {e}", row.p),
        }
    }
    let best = argmax_density(&ok)?;
    println!(
        "maximum at ({},{}): {:.7}",
        best.best.p, best.best.q, best.best.density
    );
    Ok(())
}

pub fn run_example() -> sl2r::Result<()> {
    run_example_range(26, 32)
}

#[allow(dead_code)]
fn main() -> sl2r::Result<()> {
    run_example_range(6, 72)
}
