//! Wigner functions of the binomial input, the bred state after two
//! iterations and the qunaught target, written as comma-separated grids.
//!
//!     cargo run --release --example wigner_grid -- [output-dir]

use std::fs;
use std::path::PathBuf;

use qunaught::fock::{binomial_state, qunaught_state, BinomialParams, FockConfig, QunaughtParams, StateVector};
use qunaught::metrics::{linspace, wigner, WignerGrid};
use qunaught::protocol::{run_chain, Breeder, Schedule, Selection};

fn write_grid(path: &PathBuf, grid: &WignerGrid) -> std::io::Result<()> {
    let mut text = String::new();
    for iq in 0..grid.q.len() {
        let row: Vec<String> = grid.row(iq).iter().map(|v| format!("{v:.6e}")).collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }
    fs::write(path, text)
}

fn main() -> qunaught::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "wigner_out".into()));
    fs::create_dir_all(&dir)?;

    let cfg = FockConfig::default();
    let breeder = Breeder::new(&cfg)?;
    let input = binomial_state(&cfg, BinomialParams::new(2, 3)?)?;
    let target = qunaught_state(&cfg, QunaughtParams::new(0.4))?;
    let bred = run_chain(
        &breeder,
        &input,
        &target,
        &Schedule::alternating(2),
        &[Selection::CENTER; 2],
    )?
    .state;

    let axis = linspace(-5.0, 5.0, 201);
    let states: [(&str, &StateVector); 3] = [("input", &input), ("bred", &bred), ("target", &target)];
    for (name, state) in states {
        let grid = wigner(state, &axis, &axis)?;
        let path = dir.join(format!("{name}.txt"));
        write_grid(&path, &grid)?;
        let min = grid.values.iter().cloned().fold(f64::INFINITY, f64::min);
        println!(
            "{name:>6}: integral {:.6}, W(0,0) {:+.4}, min {min:+.4} -> {}",
            grid.integral(),
            grid.at(100, 100),
            path.display()
        );
    }
    Ok(())
}
