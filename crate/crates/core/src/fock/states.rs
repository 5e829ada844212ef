use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::operators::displacement_padded;
use super::{FockConfig, StateVector};
use crate::error::{Error, Result};
use crate::numerics::{C64, ZERO};

/// Parameters of the zero-logical binomial codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialParams {
    /// Rotation-symmetry order.
    pub n: usize,
    /// Truncation parameter.
    pub k: usize,
}

impl BinomialParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidParameter(format!(
                "binomial N and K must be >= 1 (N={n}, K={k})"
            )));
        }
        Ok(BinomialParams { n, k })
    }

    /// Highest occupied Fock level.
    pub fn top_level(&self) -> usize {
        2 * (self.k / 2) * self.n
    }
}

/// `sum_k sqrt(C(K, 2k) / 2^(K-1)) |2kN>` for `k = 0..=floor(K/2)`.
pub fn binomial_state(cfg: &FockConfig, params: BinomialParams) -> Result<StateVector> {
    if params.n == 0 || params.k == 0 {
        return Err(Error::InvalidParameter("binomial N and K must be >= 1".into()));
    }
    let top = params.top_level();
    if top >= cfg.dim {
        return Err(Error::SupportOverflow {
            level: top,
            dim: cfg.dim,
        });
    }
    let norm = 2f64.powi(params.k as i32 - 1);
    let mut amps = vec![ZERO; cfg.dim];
    for k in 0..=params.k / 2 {
        amps[2 * k * params.n] = C64::new((binomial(params.k, 2 * k) / norm).sqrt(), 0.0);
    }
    StateVector::single(amps).normalized()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Squeezed vacuum with position variance `delta^2 / 2`, from the analytic
/// even-Fock series with `r = -ln(delta)`, normalized after truncation.
pub fn squeezed_vacuum(cfg: &FockConfig, delta: f64) -> Result<StateVector> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "squeezing delta must lie in (0, 1], got {delta}"
        )));
    }
    let t = -(-delta.ln()).tanh();
    let mut amps = vec![ZERO; cfg.dim];
    let mut c = 1.0;
    amps[0] = C64::new(c, 0.0);
    let mut m = 1;
    while 2 * m < cfg.dim {
        // c_m = (-tanh r)^m sqrt((2m)!) / (2^m m!)
        c *= t * ((2 * m - 1) as f64 / (2 * m) as f64).sqrt();
        amps[2 * m] = C64::new(c, 0.0);
        m += 1;
    }
    StateVector::single(amps).normalized()
}

/// Parameters of the finite-energy qunaught (square grid) state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QunaughtParams {
    pub delta: f64,
    /// Envelope cutoff; `None` selects the smallest admissible value, at least 8.
    pub t_max: Option<usize>,
}

/// Weight of an envelope term must fall below this at the cutoff.
pub const ENVELOPE_CUTOFF_WEIGHT: f64 = 1e-12;

impl QunaughtParams {
    pub fn new(delta: f64) -> Self {
        QunaughtParams { delta, t_max: None }
    }

    pub fn with_t_max(delta: f64, t_max: usize) -> Self {
        QunaughtParams {
            delta,
            t_max: Some(t_max),
        }
    }

    pub fn envelope_weight(delta: f64, t: usize) -> f64 {
        (-PI * delta * delta * (t * t) as f64).exp()
    }

    /// Resolved cutoff, validated against [`ENVELOPE_CUTOFF_WEIGHT`].
    pub fn resolved_t_max(&self) -> Result<usize> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "qunaught delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        let t_max = match self.t_max {
            Some(t) => t,
            None => {
                let mut t = 8;
                while Self::envelope_weight(self.delta, t) >= ENVELOPE_CUTOFF_WEIGHT {
                    t += 1;
                }
                t
            }
        };
        let weight = Self::envelope_weight(self.delta, t_max);
        if weight >= ENVELOPE_CUTOFF_WEIGHT {
            return Err(Error::EnvelopeCutoff {
                t_max,
                delta: self.delta,
                weight,
            });
        }
        Ok(t_max)
    }
}

/// `sum_t exp(-pi delta^2 t^2) D(t sqrt(pi)) S(delta)|0>`, normalized in the
/// truncated space. Peaks are spaced by `sqrt(2 pi)` in both quadratures.
pub fn qunaught_state(cfg: &FockConfig, params: QunaughtParams) -> Result<StateVector> {
    let t_max = params.resolved_t_max()? as i64;
    let squeezed = squeezed_vacuum(cfg, params.delta)?;
    let mut acc = vec![ZERO; cfg.dim];
    for t in -t_max..=t_max {
        let weight = QunaughtParams::envelope_weight(params.delta, t.unsigned_abs() as usize);
        let beta = C64::new(t as f64 * PI.sqrt(), 0.0);
        let d = displacement_padded(cfg.dim, cfg.displacement_padding, beta, cfg)?;
        let shifted = d.matvec(squeezed.amplitudes())?;
        for (a, s) in acc.iter_mut().zip(shifted) {
            *a += s * weight;
        }
    }
    StateVector::single(acc).normalized()
}
