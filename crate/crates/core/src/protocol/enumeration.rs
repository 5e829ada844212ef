use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::Breeder;
use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::homodyne::Axis;
use crate::metrics::fidelity;

/// One sequence `(q1, q2, p)` of a two-iteration `q` then `p` run: two
/// first-level copies measured at `q1` and `q2`, their outputs combined and
/// measured at `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeafRecord {
    pub q1: usize,
    pub q2: usize,
    pub p: usize,
    /// Probability of this exact sequence.
    pub probability: f64,
    pub fidelity: f64,
    pub delta_q: f64,
    pub delta_p: f64,
    /// Probability below the floor: no state was formed.
    pub null: bool,
}

impl LeafRecord {
    fn null(q1: usize, q2: usize, p: usize, probability: f64) -> Self {
        LeafRecord {
            q1,
            q2,
            p,
            probability,
            fidelity: 0.0,
            delta_q: f64::INFINITY,
            delta_p: f64::INFINITY,
            null: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    /// Worker threads; `None` uses the global pool.
    pub parallelism: Option<usize>,
    /// Exploit parity symmetry when the input allows it.
    pub use_symmetry: bool,
    pub max_leaves: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            parallelism: None,
            use_symmetry: true,
            max_leaves: 1_000_000,
        }
    }
}

/// Every leaf of the two-iteration tree, ordered by `(q1, q2, p)`.
#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub dim: usize,
    pub leaves: Vec<LeafRecord>,
    /// Whether the symmetry reduction was used.
    pub reduced: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub threshold: f64,
    pub probability: f64,
}

/// Leaves related by mirroring any of the three outcomes, with their
/// summed probability. Represented by the image with every index on the
/// non-positive side.
#[derive(Debug, Clone, Serialize)]
pub struct LeafClass {
    pub q1: usize,
    pub q2: usize,
    pub p: usize,
    pub images: usize,
    pub probability: f64,
    pub fidelity: f64,
    pub delta_q: f64,
    pub delta_p: f64,
}

impl Enumeration {
    pub fn leaf(&self, q1: usize, q2: usize, p: usize) -> &LeafRecord {
        &self.leaves[(q1 * self.dim + q2) * self.dim + p]
    }

    pub fn total_probability(&self) -> f64 {
        self.leaves.iter().map(|l| l.probability).sum()
    }

    /// Total probability of leaves with fidelity at least each threshold.
    pub fn probability_fidelity_curve(&self, thresholds: &[f64]) -> Vec<CurvePoint> {
        thresholds
            .iter()
            .map(|&t| CurvePoint {
                threshold: t,
                probability: self
                    .leaves
                    .iter()
                    .filter(|l| !l.null && l.fidelity >= t)
                    .map(|l| l.probability)
                    .sum::<f64>()
                    + 0.0,
            })
            .collect()
    }

    /// Total probability of leaves with `delta_q` at most each bound.
    pub fn effective_squeezing_curve(&self, bounds: &[f64]) -> Vec<CurvePoint> {
        bounds
            .iter()
            .map(|&b| CurvePoint {
                threshold: b,
                probability: self
                    .leaves
                    .iter()
                    .filter(|l| !l.null && l.delta_q <= b)
                    .map(|l| l.probability)
                    .sum::<f64>()
                    + 0.0,
            })
            .collect()
    }

    /// Highest-fidelity leaf whose probability exceeds `min_probability`.
    pub fn max_fidelity(&self, min_probability: f64) -> Option<&LeafRecord> {
        self.leaves
            .iter()
            .filter(|l| !l.null && l.probability > min_probability)
            .max_by(|a, b| a.fidelity.total_cmp(&b.fidelity))
    }

    /// Distinct mirror images of a sequence.
    pub fn mirror_images(&self, q1: usize, q2: usize, p: usize) -> Vec<(usize, usize, usize)> {
        let m = |i: usize| self.dim - 1 - i;
        let mut out = Vec::with_capacity(8);
        for a in [q1, m(q1)] {
            for b in [q2, m(q2)] {
                for c in [p, m(p)] {
                    if !out.contains(&(a, b, c)) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Summed probability of a sequence and its mirror images.
    pub fn class_probability(&self, q1: usize, q2: usize, p: usize) -> f64 {
        self.mirror_images(q1, q2, p)
            .into_iter()
            .map(|(a, b, c)| self.leaf(a, b, c).probability)
            .sum()
    }

    /// All mirror classes, ordered by representative.
    pub fn classes(&self) -> Vec<LeafClass> {
        let half = (self.dim - 1) / 2;
        let mut out = Vec::new();
        for q1 in 0..=half {
            for q2 in 0..=half {
                for p in 0..=half {
                    let rep = self.leaf(q1, q2, p);
                    out.push(LeafClass {
                        q1,
                        q2,
                        p,
                        images: self.mirror_images(q1, q2, p).len(),
                        probability: self.class_probability(q1, q2, p),
                        fidelity: rep.fidelity,
                        delta_q: rep.delta_q,
                        delta_p: rep.delta_p,
                    });
                }
            }
        }
        out
    }
}

/// Enumerates all `dim^3` leaves of the two-iteration protocol on `input`,
/// scoring each kept state against `target`.
///
/// For real inputs supported on even Fock levels, joint parity maps the
/// leaves of `(i, j)` onto those of `(i', j')` with the final outcome
/// mirrored, so only one pair of each such couple is computed. Exchanging
/// the two copies is not used: the truncation breaks that symmetry for
/// outcomes near the spectrum edge.
pub fn enumerate_two_iterations(
    breeder: &Breeder,
    input: &StateVector,
    target: &StateVector,
    opts: &EnumerationOptions,
) -> Result<Enumeration> {
    let d = breeder.dim();
    let leaves_needed = d.checked_pow(3).unwrap_or(usize::MAX);
    if leaves_needed > opts.max_leaves {
        return Err(Error::Budget(format!(
            "enumeration at dimension {d} has {leaves_needed} leaves, budget is {}",
            opts.max_leaves
        )));
    }
    let run = || enumerate_inner(breeder, input, target, opts.use_symmetry);
    match opts.parallelism {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn enumerate_inner(
    breeder: &Breeder,
    input: &StateVector,
    target: &StateVector,
    use_symmetry: bool,
) -> Result<Enumeration> {
    let d = breeder.dim();
    let floor = breeder.config().tolerances.probability_floor;
    let first = breeder.breed_step(input, input, Axis::Q)?;
    let reduced = use_symmetry && input.is_real_even(1e-14);
    let mirror = |i: usize| d - 1 - i;

    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .filter(|&(i, j)| !reduced || (i, j) == canonical(i, j, d))
        .collect();

    let computed: Vec<Vec<LeafRecord>> = pairs
        .par_iter()
        .map(|&(i, j)| leaves_for_pair(breeder, &first[i], &first[j], target, floor))
        .collect::<Result<_>>()?;

    let mut by_pair: BTreeMap<(usize, usize), &Vec<LeafRecord>> = BTreeMap::new();
    for (pair, leaves) in pairs.iter().zip(&computed) {
        by_pair.insert(*pair, leaves);
    }

    let mut leaves = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            if let Some(row) = by_pair.get(&(i, j)) {
                leaves.extend_from_slice(row);
                continue;
            }
            let (ci, cj) = canonical(i, j, d);
            let src = by_pair[&(ci, cj)];
            for k in 0..d {
                let s = src[mirror(k)];
                leaves.push(LeafRecord {
                    q1: i,
                    q2: j,
                    p: k,
                    ..s
                });
            }
        }
    }
    Ok(Enumeration {
        dim: d,
        leaves,
        reduced,
    })
}

/// Smaller of `(i, j)` and its joint-parity image.
fn canonical(i: usize, j: usize, d: usize) -> (usize, usize) {
    (i, j).min((d - 1 - i, d - 1 - j))
}

fn leaves_for_pair(
    breeder: &Breeder,
    a: &super::StepOutcome,
    b: &super::StepOutcome,
    target: &StateVector,
    floor: f64,
) -> Result<Vec<LeafRecord>> {
    let d = breeder.dim();
    let prior = a.probability * b.probability;
    let (sa, sb) = match (&a.post_state, &b.post_state) {
        (Some(x), Some(y)) => (x, y),
        _ => return Ok((0..d).map(|k| LeafRecord::null(a.index, b.index, k, 0.0)).collect()),
    };
    let m = breeder.measure(sa, sb, Axis::P)?;
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        let probability = prior * m.probabilities[k];
        match m.post_state(k, floor) {
            Some(state) => {
                let report = breeder.probe().report(&state)?;
                out.push(LeafRecord {
                    q1: a.index,
                    q2: b.index,
                    p: k,
                    probability,
                    fidelity: fidelity(&state, target)?,
                    delta_q: report.delta_q,
                    delta_p: report.delta_p,
                    null: false,
                });
            }
            None => out.push(LeafRecord::null(a.index, b.index, k, probability)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{binomial_state, qunaught_state, BinomialParams, FockConfig, QunaughtParams};

    fn setup(dim: usize) -> (Breeder, StateVector, StateVector) {
        let cfg = FockConfig::new(dim).unwrap();
        let b = Breeder::new(&cfg).unwrap();
        let input = binomial_state(&cfg, BinomialParams::new(2, 3).unwrap()).unwrap();
        let target = qunaught_state(&cfg, QunaughtParams::new(0.4)).unwrap();
        (b, input, target)
    }

    #[test]
    fn reduced_matches_brute_force() {
        let (b, input, target) = setup(16);
        let full = enumerate_two_iterations(
            &b,
            &input,
            &target,
            &EnumerationOptions {
                use_symmetry: false,
                ..Default::default()
            },
        )
        .unwrap();
        let red = enumerate_two_iterations(&b, &input, &target, &EnumerationOptions::default()).unwrap();
        assert!(red.reduced && !full.reduced);
        for (x, y) in full.leaves.iter().zip(&red.leaves) {
            assert_eq!((x.q1, x.q2, x.p), (y.q1, y.q2, y.p));
            assert!((x.probability - y.probability).abs() < 1e-14);
            assert!((x.fidelity - y.fidelity).abs() < 1e-10, "{x:?} {y:?}");
            if x.delta_q.is_finite() {
                assert!((x.delta_q - y.delta_q).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn leaf_probabilities_sum_to_one() {
        let (b, input, target) = setup(16);
        let e = enumerate_two_iterations(&b, &input, &target, &EnumerationOptions::default()).unwrap();
        assert_eq!(e.leaves.len(), 16 * 16 * 16);
        assert!((e.total_probability() - 1.0).abs() < 1e-10);
        let classes = e.classes();
        let total: f64 = classes.iter().map(|c| c.probability).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn budget_is_enforced() {
        let (b, input, target) = setup(16);
        let opts = EnumerationOptions {
            max_leaves: 100,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_two_iterations(&b, &input, &target, &opts),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn canonical_is_orbit_minimum() {
        assert_eq!(canonical(9, 2, 10), (0, 7));
        assert_eq!(canonical(2, 9, 10), (2, 9));
        assert_eq!(canonical(3, 3, 10), (3, 3));
    }
}
