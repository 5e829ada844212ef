use rayon::prelude::*;
use serde::Serialize;

use super::{run_chain_prefixes, Breeder, Schedule, Selection};
use crate::error::{Error, Result};
use crate::fock::{binomial_state, qunaught_state, BinomialParams, QunaughtParams};

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub n_values: Vec<usize>,
    pub k_values: Vec<usize>,
    pub target_deltas: Vec<f64>,
    pub max_iterations: usize,
    /// Defaults to alternating `q, p` of length `max_iterations`.
    pub schedule: Option<Schedule>,
    pub t_max: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            n_values: vec![2, 3, 4],
            k_values: (2..=7).collect(),
            target_deltas: vec![0.4, 0.35],
            max_iterations: 6,
            schedule: None,
            t_max: None,
        }
    }
}

/// Fidelity of one binomial input after a given number of iterations,
/// always keeping the outcome closest to zero.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub target_delta: f64,
    pub iteration: usize,
    pub fidelity: Option<f64>,
    pub log_probability: Option<f64>,
    /// Set when the input does not fit the truncation.
    pub overflow: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
}

impl Sweep {
    fn fidelity_of(&self, n: usize, k: usize, delta: f64, iteration: usize) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.k == k && r.target_delta == delta && r.iteration == iteration)
            .and_then(|r| r.fidelity)
    }

    /// Row with the highest fidelity at `delta` among even iteration counts of at least 2.
    pub fn best(&self, delta: f64) -> Option<&SweepRow> {
        self.rows
            .iter()
            .filter(|r| r.target_delta == delta && r.iteration >= 2 && r.iteration % 2 == 0)
            .filter(|r| r.fidelity.is_some())
            .max_by(|a, b| a.fidelity.unwrap().total_cmp(&b.fidelity.unwrap()))
    }

    /// Whether every even iteration beats the neighbouring odd ones.
    pub fn oscillates(&self, n: usize, k: usize, delta: f64) -> Option<bool> {
        let max_it = self
            .rows
            .iter()
            .filter(|r| r.n == n && r.k == k && r.target_delta == delta && r.fidelity.is_some())
            .map(|r| r.iteration)
            .max()?;
        let f = |it| self.fidelity_of(n, k, delta, it);
        for odd in (1..=max_it).step_by(2) {
            let fo = f(odd)?;
            if f(odd - 1)? <= fo {
                return Some(false);
            }
            if let Some(next) = f(odd + 1) {
                if next <= fo {
                    return Some(false);
                }
            }
        }
        Some(true)
    }
}

/// Runs every `(N, K)` input against every target width.
pub fn sweep_binomial_inputs(breeder: &Breeder, opts: &SweepOptions) -> Result<Sweep> {
    let schedule = opts
        .schedule
        .clone()
        .unwrap_or_else(|| Schedule::alternating(opts.max_iterations));
    if schedule.len() != opts.max_iterations {
        return Err(Error::Config(format!(
            "schedule of length {} for {} iterations",
            schedule.len(),
            opts.max_iterations
        )));
    }
    let cfg = breeder.config();
    let center = Selection::Index((breeder.dim() - 1) / 2);
    let selections = vec![center; schedule.len()];

    let targets = opts
        .target_deltas
        .iter()
        .map(|&delta| {
            let params = match opts.t_max {
                Some(t) => QunaughtParams::with_t_max(delta, t),
                None => QunaughtParams::new(delta),
            };
            qunaught_state(cfg, params)
        })
        .collect::<Result<Vec<_>>>()?;

    let inputs: Vec<(usize, usize)> = opts
        .n_values
        .iter()
        .flat_map(|&n| opts.k_values.iter().map(move |&k| (n, k)))
        .collect();

    let blocks = inputs
        .par_iter()
        .map(|&(n, k)| -> Result<Vec<SweepRow>> {
            let params = BinomialParams::new(n, k)?;
            let mut rows = Vec::new();
            let input = match binomial_state(cfg, params) {
                Ok(s) => Some(s),
                Err(Error::SupportOverflow { .. }) => None,
                Err(e) => return Err(e),
            };
            for (&delta, target) in opts.target_deltas.iter().zip(&targets) {
                match &input {
                    None => rows.extend((0..=opts.max_iterations).map(|iteration| SweepRow {
                        n,
                        k,
                        target_delta: delta,
                        iteration,
                        fidelity: None,
                        log_probability: None,
                        overflow: true,
                    })),
                    Some(input) => {
                        let chain = run_chain_prefixes(breeder, input, target, &schedule, &selections)?;
                        rows.extend(chain.iter().map(|r| SweepRow {
                            n,
                            k,
                            target_delta: delta,
                            iteration: r.iterations,
                            fidelity: Some(r.fidelity),
                            log_probability: Some(r.log_probability),
                            overflow: false,
                        }));
                    }
                }
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep {
        rows: blocks.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockConfig;

    #[test]
    fn overflow_rows_are_flagged() {
        let cfg = FockConfig::new(8).unwrap();
        let b = Breeder::new(&cfg).unwrap();
        let opts = SweepOptions {
            n_values: vec![2, 4],
            k_values: vec![3],
            target_deltas: vec![0.4],
            max_iterations: 2,
            ..Default::default()
        };
        let s = sweep_binomial_inputs(&b, &opts).unwrap();
        assert_eq!(s.rows.len(), 6);
        assert!(s
            .rows
            .iter()
            .filter(|r| r.n == 4)
            .all(|r| r.overflow && r.fidelity.is_none()));
        assert!(s.rows.iter().filter(|r| r.n == 2).all(|r| !r.overflow));
    }
}
