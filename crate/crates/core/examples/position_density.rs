//! Position probability density of the input, bred and target states. The
//! bred state develops peaks on the lattice `q = n sqrt(2 pi)`.

use std::f64::consts::PI;

use qunaught::fock::{binomial_state, qunaught_state, BinomialParams, FockConfig, QunaughtParams};
use qunaught::metrics::{linspace, position_density};
use qunaught::protocol::{run_chain, Breeder, Schedule, Selection};

fn main() -> qunaught::Result<()> {
    let cfg = FockConfig::default();
    let breeder = Breeder::new(&cfg)?;
    let input = binomial_state(&cfg, BinomialParams::new(2, 3)?)?;
    let target = qunaught_state(&cfg, QunaughtParams::new(0.4))?;
    let bred = run_chain(
        &breeder,
        &input,
        &target,
        &Schedule::alternating(4),
        &[Selection::CENTER; 4],
    )?
    .state;

    let q = linspace(-7.0, 7.0, 57);
    let columns = [
        position_density(&input, &q)?,
        position_density(&bred, &q)?,
        position_density(&target, &q)?,
    ];
    println!(
        "{:>8} {:>8} {:>8} {:>8} {:>8}",
        "q", "q/sqrt2pi", "input", "bred", "target"
    );
    for (i, x) in q.iter().enumerate() {
        println!(
            "{x:>8.3} {:>8.3} {:>8.4} {:>8.4} {:>8.4}",
            x / (2.0 * PI).sqrt(),
            columns[0][i],
            columns[1][i],
            columns[2][i]
        );
    }
    Ok(())
}
