//! Position-homodyne outcome distribution after one breeding step on two
//! copies of the N=2, K=3 binomial state, with the labeled peaks.

use qunaught::fock::{binomial_state, BinomialParams, FockConfig};
use qunaught::homodyne::{Axis, PeakKind};
use qunaught::protocol::Breeder;

fn main() -> qunaught::Result<()> {
    let cfg = FockConfig::default();
    let breeder = Breeder::new(&cfg)?;
    let input = binomial_state(&cfg, BinomialParams::new(2, 3)?)?;
    let dist = breeder.distribution(&input, &input, Axis::Q)?;

    println!("{:>5} {:>10} {:>10}  label", "index", "q/sqrt(2pi)", "P");
    for i in 0..dist.dim() {
        let label = dist.label(i).map(|l| l.to_string()).unwrap_or_default();
        println!(
            "{i:>5} {:>10.4} {:>10.5}  {label}",
            dist.rescaled_outcomes[i], dist.probabilities[i]
        );
    }

    let mut kept = 0.0;
    for kind in [PeakKind::C, PeakKind::S1, PeakKind::S2] {
        if let Some(i) = dist.index_of(kind) {
            let pair = dist.probabilities[i] + dist.probabilities[dist.dim() - 1 - i];
            kept += pair;
            println!("{:<3} index {i:>2}: {:.4} with its mirror", kind.name(), pair);
        }
    }
    println!("C, S1, S2 and mirrors together: {kept:.4}");
    Ok(())
}
