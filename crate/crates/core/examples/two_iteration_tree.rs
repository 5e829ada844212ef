//! Every outcome sequence of two breeding iterations (q then p): the
//! probability of reaching a given fidelity or effective squeezing, and the
//! best sequences grouped with their mirror images.

use qunaught::fock::{binomial_state, qunaught_state, BinomialParams, FockConfig, QunaughtParams};
use qunaught::metrics::linspace;
use qunaught::protocol::{enumerate_two_iterations, Breeder, EnumerationOptions};

fn main() -> qunaught::Result<()> {
    let cfg = FockConfig::default();
    let breeder = Breeder::new(&cfg)?;
    let input = binomial_state(&cfg, BinomialParams::new(2, 3)?)?;
    let target = qunaught_state(&cfg, QunaughtParams::new(0.4))?;

    let tree = enumerate_two_iterations(&breeder, &input, &target, &EnumerationOptions::default())?;
    println!(
        "{} leaves, total probability {:.12}",
        tree.leaves.len(),
        tree.total_probability()
    );
    if let Some(best) = tree.max_fidelity(1e-15) {
        println!(
            "best leaf ({}, {}, {}): F = {:.4}, P = {:.2e}",
            best.q1, best.q2, best.p, best.fidelity, best.probability
        );
    }

    println!("\nP(F >= threshold)");
    for pt in tree.probability_fidelity_curve(&linspace(0.90, 0.99, 10)) {
        println!("  {:.3}  {:.5}", pt.threshold, pt.probability);
    }
    println!("\nP(delta_q <= bound)");
    for pt in tree.effective_squeezing_curve(&linspace(0.30, 0.50, 11)) {
        println!("  {:.2}  {:.5}", pt.threshold, pt.probability);
    }

    let mut classes = tree.classes();
    classes.retain(|c| c.probability > 1e-6);
    classes.sort_by(|a, b| b.fidelity.total_cmp(&a.fidelity));
    println!(
        "\n{:>4} {:>4} {:>4} {:>8} {:>9} {:>7}",
        "q1", "q2", "p", "F", "P(class)", "dq"
    );
    for c in classes.iter().take(15) {
        println!(
            "{:>4} {:>4} {:>4} {:>8.4} {:>9.4} {:>7.4}",
            c.q1, c.q2, c.p, c.fidelity, c.probability, c.delta_q
        );
    }
    Ok(())
}
