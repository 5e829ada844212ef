//! Balanced beamsplitter `exp(theta (a^dagger b - a b^dagger))`, theta = pi/4.
//!
//! The generator conserves total photon number, so the unitary is stored
//! as one dense real block per photon-number sector. Each block is obtained
//! from the tridiagonal eigensolver: the sector generator is real
//! antisymmetric tridiagonal and becomes `-i S` (S real symmetric) under
//! the diagonal similarity `diag(i^j)`.

use std::f64::consts::FRAC_PI_4;

use super::state::{Modes, StateVector};
use super::FockConfig;
use crate::error::{Error, Result};
use crate::numerics::{eig_hermitian_tridiagonal_with, expm_skew_hermitian_with, ComplexMatrix, C64, ZERO};

#[derive(Debug, Clone)]
struct SectorBlock {
    /// Lowest mode-1 occupation in the sector.
    first: usize,
    total: usize,
    size: usize,
    /// Row-major `size x size`, real.
    matrix: Vec<f64>,
}

/// Two-mode beamsplitter in photon-number block form.
#[derive(Debug, Clone)]
pub struct Beamsplitter {
    dim: usize,
    theta: f64,
    blocks: Vec<SectorBlock>,
}

/// Coupling `sqrt((k+1)(n-k))` between `|k, n-k>` and `|k+1, n-k-1>`.
fn sector_couplings(total: usize, first: usize, size: usize) -> Vec<f64> {
    (0..size.saturating_sub(1))
        .map(|j| {
            let k = first + j;
            (((k + 1) * (total - k)) as f64).sqrt()
        })
        .collect()
}

impl Beamsplitter {
    pub fn new(cfg: &FockConfig, theta: f64) -> Result<Self> {
        let d = cfg.dim;
        let mut blocks = Vec::with_capacity(2 * d - 1);
        for total in 0..=2 * (d - 1) {
            let first = total.saturating_sub(d - 1);
            let last = total.min(d - 1);
            let size = last - first + 1;
            let couplings = sector_couplings(total, first, size);
            let eig = eig_hermitian_tridiagonal_with(&vec![0.0; size], &couplings, &cfg.tolerances)?;

            // exp(theta T) = Phi V exp(-i theta Lambda) V^T Phi^-1, Phi = diag(i^j).
            let phases: Vec<C64> = eig
                .eigenvalues
                .iter()
                .map(|&l| C64::from_polar(1.0, -theta * l))
                .collect();
            let mut matrix = vec![0.0; size * size];
            for a in 0..size {
                for b in 0..size {
                    let mut acc = ZERO;
                    for (l, ph) in phases.iter().enumerate() {
                        acc += ph * (eig.eigenvectors[(a, l)].re * eig.eigenvectors[(b, l)].re);
                    }
                    let rel = C64::i().powi(a as i32 - b as i32);
                    matrix[a * size + b] = (rel * acc).re;
                }
            }
            blocks.push(SectorBlock {
                first,
                total,
                size,
                matrix,
            });
        }
        Ok(Beamsplitter { dim: d, theta, blocks })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.modes() != Modes::Two || state.dim() != self.dim {
            return Err(Error::Shape(format!(
                "beamsplitter of dimension {} applied to a {:?}-mode state of dimension {}",
                self.dim,
                state.modes(),
                state.dim()
            )));
        }
        let d = self.dim;
        let input = state.amplitudes();
        let mut out = vec![ZERO; d * d];
        let mut gathered = Vec::with_capacity(d);
        for block in &self.blocks {
            let idx = |j: usize| {
                let k = block.first + j;
                k * d + (block.total - k)
            };
            gathered.clear();
            gathered.extend((0..block.size).map(|j| input[idx(j)]));
            if gathered.iter().all(|z| *z == ZERO) {
                continue;
            }
            for a in 0..block.size {
                let row = &block.matrix[a * block.size..(a + 1) * block.size];
                let mut acc = ZERO;
                for (&m, &x) in row.iter().zip(&gathered) {
                    acc += x * m;
                }
                out[idx(a)] = acc;
            }
        }
        StateVector::two_mode(d, out)
    }

    /// Dense `dim^2 x dim^2` matrix.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let d = self.dim;
        let mut m = ComplexMatrix::zeros(d * d, d * d);
        for block in &self.blocks {
            let idx = |j: usize| {
                let k = block.first + j;
                k * d + (block.total - k)
            };
            for a in 0..block.size {
                for b in 0..block.size {
                    m[(idx(a), idx(b))] = C64::new(block.matrix[a * block.size + b], 0.0);
                }
            }
        }
        m
    }
}

/// The balanced beamsplitter used throughout the protocol.
pub fn beamsplitter(cfg: &FockConfig) -> Result<Beamsplitter> {
    Beamsplitter::new(cfg, FRAC_PI_4)
}

/// Dense generator `theta (a^dagger b - a b^dagger)` on the `dim^2` space.
pub fn beamsplitter_generator(cfg: &FockConfig, theta: f64) -> ComplexMatrix {
    let d = cfg.dim;
    let mut g = ComplexMatrix::zeros(d * d, d * d);
    for k in 0..d {
        for m in 0..d {
            let col = k * d + m;
            // a^dagger b |k, m> = sqrt((k+1) m) |k+1, m-1>
            if k + 1 < d && m > 0 {
                g[((k + 1) * d + m - 1, col)] += theta * (((k + 1) * m) as f64).sqrt();
            }
            // a b^dagger |k, m> = sqrt(k (m+1)) |k-1, m+1>
            if k > 0 && m + 1 < d {
                g[((k - 1) * d + m + 1, col)] -= theta * ((k * (m + 1)) as f64).sqrt();
            }
        }
    }
    g
}

/// Dense beamsplitter by exponentiating the full generator. Only practical
/// for small dimensions; used to cross-check the block construction.
pub fn beamsplitter_dense(cfg: &FockConfig) -> Result<ComplexMatrix> {
    expm_skew_hermitian_with(&beamsplitter_generator(cfg, FRAC_PI_4), &cfg.tolerances)
}
