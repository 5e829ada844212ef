use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{inner, kron_vec, norm, C64, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Modes {
    One,
    Two,
}

/// Pure state over a truncated Fock basis. Two-mode amplitudes are indexed
/// `n1 * dim + n2`, with mode 1 the outer (measured) mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateVector {
    dim: usize,
    modes: Modes,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn single(amplitudes: Vec<C64>) -> Self {
        StateVector {
            dim: amplitudes.len(),
            modes: Modes::One,
            amplitudes,
        }
    }

    pub fn two_mode(dim: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != dim * dim {
            return Err(Error::Shape(format!(
                "{} amplitudes for a two-mode state of dimension {dim}",
                amplitudes.len()
            )));
        }
        Ok(StateVector {
            dim,
            modes: Modes::Two,
            amplitudes,
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Self {
        Self::single(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn fock(dim: usize, n: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::SupportOverflow { level: n, dim });
        }
        let mut amps = vec![ZERO; dim];
        amps[n] = C64::new(1.0, 0.0);
        Ok(Self::single(amps))
    }

    pub fn vacuum(dim: usize) -> Self {
        Self::fock(dim, 0).expect("dim >= 1")
    }

    /// `left (x) right`, with `left` on mode 1.
    pub fn product(left: &StateVector, right: &StateVector) -> Result<Self> {
        if left.modes != Modes::One || right.modes != Modes::One || left.dim != right.dim {
            return Err(Error::Shape(
                "product needs two single-mode states of equal dimension".into(),
            ));
        }
        Self::two_mode(left.dim, kron_vec(&left.amplitudes, &right.amplitudes))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> Modes {
        self.modes
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() < tol
    }

    pub fn ensure_normalized(&self, tol: f64) -> Result<()> {
        if self.is_normalized(tol) {
            Ok(())
        } else {
            Err(Error::NotNormalized(self.norm()))
        }
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n));
        }
        self.amplitudes.iter_mut().for_each(|z| *z /= n);
        Ok(self)
    }

    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::Shape(format!(
                "inner product of lengths {} and {}",
                self.amplitudes.len(),
                other.amplitudes.len()
            )));
        }
        Ok(inner(&self.amplitudes, &other.amplitudes))
    }

    /// Image under the Fock parity `(-1)^n` (single mode only).
    pub fn parity_image(&self) -> StateVector {
        assert_eq!(self.modes, Modes::One);
        let amps = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(n, &z)| if n % 2 == 1 { -z } else { z })
            .collect();
        StateVector::single(amps)
    }

    /// Applies `|n> -> e^{i phi n} |n>` (single mode only).
    pub fn phase_rotated(&self, phi: f64) -> StateVector {
        assert_eq!(self.modes, Modes::One);
        let amps = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(n, &z)| z * C64::from_polar(1.0, phi * n as f64))
            .collect();
        StateVector::single(amps)
    }

    /// Real amplitudes supported only on even Fock levels.
    pub fn is_real_even(&self, tol: f64) -> bool {
        self.modes == Modes::One
            && self
                .amplitudes
                .iter()
                .enumerate()
                .all(|(n, z)| z.im.abs() <= tol && (n % 2 == 0 || z.re.abs() <= tol))
    }

    /// Highest Fock level with non-negligible weight.
    pub fn support_edge(&self, tol: f64) -> usize {
        self.amplitudes.iter().rposition(|z| z.norm() > tol).unwrap_or(0)
    }
}
