//! Numerical tolerances used across the crate.

use serde::{Deserialize, Serialize};

/// Single record holding every tolerance and numeric guard.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative bound on `max|A - A^dagger|` for Hermitian inputs.
    pub hermitian: f64,
    /// Bound on `|G + G^dagger|` for generators passed to `expm_skew_hermitian`.
    pub skew_hermitian: f64,
    /// Bound on `| ||v|| - 1 |` for states flagged normalized.
    pub normalized: f64,
    /// Truncation tolerance for the Taylor series in `expm`.
    pub expm_series: f64,
    /// Residual bound `||A v - lambda v||` accepted from the eigensolver.
    pub eigen_residual: f64,
    /// Maximum QL sweeps per eigenvalue before giving up.
    pub eigen_max_sweeps: usize,
    /// Probabilities below this floor are treated as zero.
    pub probability_floor: f64,
    /// Largest admissible matrix side produced by `kron`.
    pub max_dimension: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        DEFAULT
    }
}

pub const DEFAULT: Tolerances = Tolerances {
    hermitian: 1e-12,
    skew_hermitian: 1e-12,
    normalized: 1e-12,
    expm_series: 1e-12,
    eigen_residual: 1e-10,
    eigen_max_sweeps: 60,
    probability_floor: 1e-300,
    max_dimension: 1 << 14,
};
