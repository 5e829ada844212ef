use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::Breeder;
use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::homodyne::{label_peaks, Axis, OutcomeDistribution, PeakKind};
use crate::metrics::fidelity;

/// Measurement axis for each iteration, e.g. `qpqp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule(Vec<Axis>);

impl Schedule {
    pub fn new(axes: Vec<Axis>) -> Self {
        Schedule(axes)
    }

    /// `q, p, q, p, ...` of the given length.
    pub fn alternating(len: usize) -> Self {
        Schedule((0..len).map(|i| if i % 2 == 0 { Axis::Q } else { Axis::P }).collect())
    }

    pub fn axes(&self) -> &[Axis] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix(&self, len: usize) -> Schedule {
        Schedule(self.0[..len.min(self.0.len())].to_vec())
    }
}

impl FromStr for Schedule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .filter(|c| !matches!(c, ',' | ' '))
            .map(|c| Axis::from_char(c).ok_or_else(|| Error::Config(format!("schedule entry '{c}' is not q or p"))))
            .collect::<Result<Vec<_>>>()
            .map(Schedule)
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Which outcome to keep at one level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    Index(usize),
    Peak { kind: PeakKind, mirror: bool },
}

impl Selection {
    pub const CENTER: Selection = Selection::Peak {
        kind: PeakKind::C,
        mirror: false,
    };

    pub fn resolve(&self, dist: &OutcomeDistribution) -> Result<usize> {
        match *self {
            Selection::Index(i) if i < dist.dim() => Ok(i),
            Selection::Index(i) => Err(Error::OutcomeIndex {
                index: i,
                dim: dist.dim(),
            }),
            Selection::Peak { kind, mirror } => {
                let i = dist.index_of(kind).ok_or_else(|| {
                    Error::InvalidParameter(format!("no {} peak in the {} distribution", kind.name(), dist.axis))
                })?;
                Ok(if mirror { dist.dim() - 1 - i } else { i })
            }
        }
    }
}

impl FromStr for Selection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Ok(i) = s.parse::<usize>() {
            return Ok(Selection::Index(i));
        }
        match s.strip_prefix("mirror-") {
            Some(rest) => Ok(Selection::Peak {
                kind: rest.parse()?,
                mirror: true,
            }),
            None => Ok(Selection::Peak {
                kind: s.parse()?,
                mirror: false,
            }),
        }
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selection::Index(i) => write!(f, "{i}"),
            Selection::Peak { kind, mirror: false } => write!(f, "{}", kind.name()),
            Selection::Peak { kind, mirror: true } => write!(f, "mirror-{}", kind.name()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutcomeStep {
    pub level: usize,
    pub axis: Axis,
    pub index: usize,
    pub rescaled_outcome: f64,
    pub label: Option<String>,
    pub probability: f64,
}

/// One post-selected path through the protocol.
#[derive(Debug, Clone, Serialize)]
pub struct BranchResult {
    pub iterations: usize,
    pub schedule: String,
    pub outcome_path: Vec<OutcomeStep>,
    /// `ln` of the probability of obtaining this exact path, counting every
    /// measurement in the binary tree of copies.
    pub log_probability: f64,
    /// Same, with each measurement also accepting its mirrored outcome. Copies
    /// that took mirrored branches are treated as equivalent.
    pub log_probability_mirror_aggregated: f64,
    pub fidelity: f64,
    pub delta_q: f64,
    pub delta_p: f64,
    #[serde(skip)]
    pub state: StateVector,
}

impl BranchResult {
    pub fn probability(&self) -> f64 {
        self.log_probability.exp()
    }

    pub fn probability_mirror_aggregated(&self) -> f64 {
        self.log_probability_mirror_aggregated.exp()
    }
}

/// Runs the schedule on identical copies of `input`, keeping `selections[j]`
/// at level `j + 1`, and scores the final state against `target`.
pub fn run_chain(
    breeder: &Breeder,
    input: &StateVector,
    target: &StateVector,
    schedule: &Schedule,
    selections: &[Selection],
) -> Result<BranchResult> {
    let mut all = run_chain_prefixes(breeder, input, target, schedule, selections)?;
    Ok(all.pop().expect("prefix list is never empty"))
}

/// Results after 0, 1, ..., `schedule.len()` iterations of one chain. The
/// state at each level does not depend on later levels, so one pass suffices.
pub fn run_chain_prefixes(
    breeder: &Breeder,
    input: &StateVector,
    target: &StateVector,
    schedule: &Schedule,
    selections: &[Selection],
) -> Result<Vec<BranchResult>> {
    if selections.len() != schedule.len() {
        return Err(Error::Config(format!(
            "{} post-selections given for a schedule of length {}",
            selections.len(),
            schedule.len()
        )));
    }
    let floor = breeder.config().tolerances.probability_floor;
    let score = |state: &StateVector, path: &[OutcomeStep], mult: &[f64]| -> Result<BranchResult> {
        let k = path.len();
        let mut log_p = 0.0;
        let mut log_agg = 0.0;
        for (j, (step, m)) in path.iter().zip(mult).enumerate() {
            let copies = 2f64.powi((k - j - 1) as i32);
            log_p += copies * step.probability.ln();
            log_agg += copies * (step.probability * m).ln();
        }
        let report = breeder.probe().report(state)?;
        Ok(BranchResult {
            iterations: k,
            schedule: schedule.prefix(k).to_string(),
            outcome_path: path.to_vec(),
            log_probability: log_p,
            log_probability_mirror_aggregated: log_agg,
            fidelity: fidelity(state, target)?,
            delta_q: report.delta_q,
            delta_p: report.delta_p,
            state: state.clone(),
        })
    };

    let mut state = input.clone();
    let mut path = Vec::new();
    let mut mult = Vec::new();
    let mut out = vec![score(&state, &path, &mult)?];
    for (level, (&axis, sel)) in schedule.axes().iter().zip(selections).enumerate() {
        let level = level + 1;
        let m = breeder.measure(&state, &state, axis)?;
        let basis = breeder.basis(axis);
        let dist = label_peaks(&OutcomeDistribution::from_measurement(&m, basis));
        let index = sel.resolve(&dist)?;
        let probability = m.probabilities[index];
        if probability < floor {
            return Err(Error::Underflow { level, probability });
        }
        state = m.post_state(index, floor).expect("above floor");
        let mirror = basis.mirror(index);
        mult.push(if mirror != index {
            1.0 + m.probabilities[mirror] / probability
        } else {
            1.0
        });
        path.push(OutcomeStep {
            level,
            axis,
            index,
            rescaled_outcome: basis.rescaled(index),
            label: dist.label(index).map(|l| l.to_string()),
            probability,
        });
        out.push(score(&state, &path, &mult)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{binomial_state, qunaught_state, BinomialParams, FockConfig, QunaughtParams};

    #[test]
    fn schedule_parses() {
        let s: Schedule = "qpqp".parse().unwrap();
        assert_eq!(s, Schedule::alternating(4));
        assert_eq!(s.to_string(), "qpqp");
        assert!("qx".parse::<Schedule>().is_err());
        assert_eq!("".parse::<Schedule>().unwrap().len(), 0);
    }

    #[test]
    fn selection_parses() {
        assert_eq!("24".parse::<Selection>().unwrap(), Selection::Index(24));
        assert_eq!("C".parse::<Selection>().unwrap(), Selection::CENTER);
        assert_eq!(
            "mirror-S1".parse::<Selection>().unwrap(),
            Selection::Peak {
                kind: PeakKind::S1,
                mirror: true
            }
        );
        assert!("Z".parse::<Selection>().is_err());
    }

    #[test]
    fn chain_probability_counts_copies() {
        let cfg = FockConfig::new(30).unwrap();
        let b = Breeder::new(&cfg).unwrap();
        let input = binomial_state(&cfg, BinomialParams::new(2, 3).unwrap()).unwrap();
        let target = qunaught_state(&cfg, QunaughtParams::new(0.4)).unwrap();
        let sched = Schedule::alternating(2);
        let r = run_chain_prefixes(&b, &input, &target, &sched, &[Selection::CENTER; 2]).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[0].log_probability, 0.0);
        let p1 = r[2].outcome_path[0].probability;
        let p2 = r[2].outcome_path[1].probability;
        assert!((r[2].log_probability - (2.0 * p1.ln() + p2.ln())).abs() < 1e-12);
        assert!((r[2].log_probability_mirror_aggregated - r[2].log_probability - 3.0 * 2f64.ln()).abs() < 1e-12);
        assert_eq!(r[2].outcome_path[0].label.as_deref(), Some("C"));
    }

    #[test]
    fn selection_count_must_match() {
        let cfg = FockConfig::new(10).unwrap();
        let b = Breeder::new(&cfg).unwrap();
        let v = StateVector::vacuum(10);
        assert!(run_chain(&b, &v, &v, &Schedule::alternating(2), &[Selection::CENTER]).is_err());
    }
}
