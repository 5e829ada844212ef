//! Truncated Fock space: configuration, state vectors, single-mode
//! operators and the two-mode beamsplitter.
//!
//! Quadrature conventions are `q = (a + a^dagger)/sqrt(2)` and
//! `p = i(a^dagger - a)/sqrt(2)`, so the vacuum variance is 1/2.

mod beamsplitter;
mod operators;
mod state;
mod states;

pub use beamsplitter::{beamsplitter, beamsplitter_dense, beamsplitter_generator, Beamsplitter};
pub use operators::{
    annihilation, creation, displacement, displacement_padded, number, phase_rotation, quadrature,
    quadrature_tridiagonal,
};
pub use state::{Modes, StateVector};
pub use states::{binomial_state, qunaught_state, squeezed_vacuum, BinomialParams, QunaughtParams};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Default Hilbert-space truncation.
pub const DEFAULT_DIM: usize = 50;

/// Extra Fock levels used when building displacements before truncating
/// back to the working dimension.
pub const DEFAULT_DISPLACEMENT_PADDING: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockConfig {
    pub dim: usize,
    pub displacement_padding: usize,
    #[serde(skip)]
    pub tolerances: Tolerances,
}

impl FockConfig {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        Ok(FockConfig {
            dim,
            displacement_padding: DEFAULT_DISPLACEMENT_PADDING,
            tolerances: Tolerances::default(),
        })
    }

    pub fn with_padding(mut self, padding: usize) -> Self {
        self.displacement_padding = padding;
        self
    }

    /// Vacuum quadrature variance.
    pub const fn vacuum_variance() -> f64 {
        0.5
    }
}

impl Default for FockConfig {
    fn default() -> Self {
        FockConfig::new(DEFAULT_DIM).expect("default dimension is valid")
    }
}
