//! Iterated breeding of the N=2, K=3 binomial state, keeping the central
//! outcome at every level, scored against a qunaught target.
//!
//!     cargo run --release --example breeding_chain -- [iterations] [delta]

use qunaught::fock::{binomial_state, qunaught_state, BinomialParams, FockConfig, QunaughtParams};
use qunaught::metrics::sgkp_db;
use qunaught::protocol::{run_chain_prefixes, Breeder, Schedule, Selection};

fn main() -> qunaught::Result<()> {
    let mut args = std::env::args().skip(1);
    let iterations: usize = args.next().map_or(8, |s| s.parse().expect("iterations"));
    let delta: f64 = args.next().map_or(0.4, |s| s.parse().expect("delta"));

    let cfg = FockConfig::default();
    let breeder = Breeder::new(&cfg)?;
    let input = binomial_state(&cfg, BinomialParams::new(2, 3)?)?;
    let target = qunaught_state(&cfg, QunaughtParams::new(delta))?;
    let schedule = Schedule::alternating(iterations);
    let picks = vec![Selection::CENTER; iterations];

    println!("target delta {delta} ({:.2} dB), schedule {schedule}", sgkp_db(delta));
    println!(
        "{:>4} {:>8} {:>12} {:>12} {:>8} {:>8}",
        "k", "F", "P(path)", "P(mirror)", "dq", "dp"
    );
    for r in run_chain_prefixes(&breeder, &input, &target, &schedule, &picks)? {
        println!(
            "{:>4} {:>8.4} {:>12.3e} {:>12.3e} {:>8.4} {:>8.4}",
            r.iterations,
            r.fidelity,
            r.probability(),
            r.probability_mirror_aggregated(),
            r.delta_q,
            r.delta_p
        );
    }
    Ok(())
}
