//! The breeding protocol: two copies of a state meet on a balanced
//! beamsplitter, one output port is measured by homodyne detection and the
//! other is kept. Iterating this on identical copies turns a binomial codeword
//! into an approximate qunaught state.

mod chain;
mod enumeration;
mod sweep;

pub use chain::{run_chain, run_chain_prefixes, BranchResult, OutcomeStep, Schedule, Selection};
pub use enumeration::{enumerate_two_iterations, CurvePoint, Enumeration, EnumerationOptions, LeafClass, LeafRecord};
pub use sweep::{sweep_binomial_inputs, Sweep, SweepOptions, SweepRow};

use crate::error::{Error, Result};
use crate::fock::{beamsplitter, Beamsplitter, FockConfig, StateVector};
use crate::homodyne::{
    label_peaks, measure, quadrature_basis, Axis, Measurement, OutcomeDistribution, QuadratureBasis,
};
use crate::metrics::SqueezingProbe;

/// Normalization tolerance for states entering a breeding step.
const INPUT_NORM_TOL: f64 = 1e-10;

/// Precomputed operators shared by every breeding step at one truncation.
#[derive(Debug, Clone)]
pub struct Breeder {
    cfg: FockConfig,
    beamsplitter: Beamsplitter,
    q: QuadratureBasis,
    p: QuadratureBasis,
    probe: SqueezingProbe,
}

/// One measurement outcome of a breeding step.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub index: usize,
    pub probability: f64,
    /// `None` when the outcome is below the probability floor.
    pub post_state: Option<StateVector>,
}

impl Breeder {
    pub fn new(cfg: &FockConfig) -> Result<Self> {
        Ok(Breeder {
            cfg: *cfg,
            beamsplitter: beamsplitter(cfg)?,
            q: quadrature_basis(cfg, Axis::Q)?,
            p: quadrature_basis(cfg, Axis::P)?,
            probe: SqueezingProbe::new(cfg)?,
        })
    }

    pub fn config(&self) -> &FockConfig {
        &self.cfg
    }

    pub fn dim(&self) -> usize {
        self.cfg.dim
    }

    pub fn basis(&self, axis: Axis) -> &QuadratureBasis {
        match axis {
            Axis::Q => &self.q,
            Axis::P => &self.p,
        }
    }

    pub fn probe(&self) -> &SqueezingProbe {
        &self.probe
    }

    pub fn beamsplitter(&self) -> &Beamsplitter {
        &self.beamsplitter
    }

    /// Beamsplitter output for `left` on mode 1 and `right` on mode 2.
    pub fn combine(&self, left: &StateVector, right: &StateVector) -> Result<StateVector> {
        self.beamsplitter.apply(&StateVector::product(left, right)?)
    }

    /// All conditional states of mode 2 after measuring mode 1 along `axis`.
    pub fn measure(&self, left: &StateVector, right: &StateVector, axis: Axis) -> Result<Measurement> {
        for s in [left, right] {
            if s.dim() != self.dim() {
                return Err(Error::Shape(format!(
                    "state of dimension {} given to a dimension {} breeder",
                    s.dim(),
                    self.dim()
                )));
            }
            s.ensure_normalized(INPUT_NORM_TOL)?;
        }
        measure(&self.combine(left, right)?, self.basis(axis))
    }

    /// One breeding step: every outcome with its probability and kept state.
    pub fn breed_step(&self, left: &StateVector, right: &StateVector, axis: Axis) -> Result<Vec<StepOutcome>> {
        let m = self.measure(left, right, axis)?;
        let floor = self.cfg.tolerances.probability_floor;
        Ok((0..self.dim())
            .map(|i| StepOutcome {
                index: i,
                probability: m.probabilities[i],
                post_state: m.post_state(i, floor),
            })
            .collect())
    }

    /// Labeled outcome distribution of one breeding step.
    pub fn distribution(&self, left: &StateVector, right: &StateVector, axis: Axis) -> Result<OutcomeDistribution> {
        let m = self.measure(left, right, axis)?;
        Ok(label_peaks(&OutcomeDistribution::from_measurement(
            &m,
            self.basis(axis),
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{binomial_state, BinomialParams};

    #[test]
    fn step_probabilities_sum_to_one() {
        let cfg = FockConfig::new(30).unwrap();
        let b = Breeder::new(&cfg).unwrap();
        let s = binomial_state(&cfg, BinomialParams::new(2, 3).unwrap()).unwrap();
        for axis in [Axis::Q, Axis::P] {
            let out = b.breed_step(&s, &s, axis).unwrap();
            let total: f64 = out.iter().map(|o| o.probability).sum();
            assert!((total - 1.0).abs() < 1e-12);
            for o in out.iter().filter(|o| o.probability > 1e-12) {
                let st = o.post_state.as_ref().unwrap();
                assert!((st.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_unnormalized_input() {
        let cfg = FockConfig::new(8).unwrap();
        let b = Breeder::new(&cfg).unwrap();
        let bad = StateVector::from_real(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let good = StateVector::vacuum(8);
        assert!(matches!(
            b.breed_step(&bad, &good, Axis::Q),
            Err(Error::NotNormalized(_))
        ));
        assert!(b.breed_step(&StateVector::vacuum(9), &good, Axis::Q).is_err());
    }
}
