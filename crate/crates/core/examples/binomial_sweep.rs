//! Fidelity with the qunaught target against the number of iterations for a
//! range of binomial inputs, always keeping the central outcome.

use qunaught::fock::FockConfig;
use qunaught::protocol::{sweep_binomial_inputs, Breeder, SweepOptions};

fn main() -> qunaught::Result<()> {
    let cfg = FockConfig::default();
    let breeder = Breeder::new(&cfg)?;
    let opts = SweepOptions::default();
    let sweep = sweep_binomial_inputs(&breeder, &opts)?;

    for &delta in &opts.target_deltas {
        println!("target delta {delta}");
        for &n in &opts.n_values {
            for &k in &opts.k_values {
                let row: Vec<String> = sweep
                    .rows
                    .iter()
                    .filter(|r| r.n == n && r.k == k && r.target_delta == delta)
                    .map(|r| r.fidelity.map_or("   -  ".into(), |f| format!("{f:.4}")))
                    .collect();
                println!("  N={n} K={k}: {}", row.join(" "));
            }
        }
        if let Some(best) = sweep.best(delta) {
            println!(
                "  best: N={} K={} after {} iterations, F = {:.4}",
                best.n,
                best.k,
                best.iteration,
                best.fidelity.unwrap()
            );
        }
    }
    Ok(())
}
