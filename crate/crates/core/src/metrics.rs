//! Figures of merit: overlap fidelity, effective squeezing, phase-space and
//! position-space pictures of single-mode states.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{displacement, FockConfig, Modes, StateVector};
use crate::homodyne::Axis;
use crate::numerics::{inner, ComplexMatrix, C64};

/// Overlap magnitude `|<a|b>|` of two pure states.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    if a.modes() != b.modes() || a.dim() != b.dim() {
        return Err(Error::Shape(format!(
            "fidelity between dimension {} and dimension {} states",
            a.dim(),
            b.dim()
        )));
    }
    Ok(a.inner(b)?.norm())
}

/// Lattice displacements `D(sqrt(pi))` and `D(i sqrt(pi))`, built once and
/// reused for many effective-squeezing evaluations.
#[derive(Debug, Clone)]
pub struct SqueezingProbe {
    dim: usize,
    shift_q: ComplexMatrix,
    shift_p: ComplexMatrix,
}

impl SqueezingProbe {
    pub fn new(cfg: &FockConfig) -> Result<Self> {
        let s = PI.sqrt();
        Ok(SqueezingProbe {
            dim: cfg.dim,
            shift_q: displacement(cfg, C64::new(s, 0.0))?,
            shift_p: displacement(cfg, C64::new(0.0, s))?,
        })
    }

    /// Effective squeezing along `axis`.
    ///
    /// `Q` uses the displacement by one lattice period along `q`, so it
    /// measures the width of the position peaks; `P` the width of the momentum peaks.
    /// Returns `0.0` when the overlap magnitude is at least 1 and
    /// `f64::INFINITY` when it vanishes.
    pub fn delta(&self, state: &StateVector, axis: Axis) -> Result<f64> {
        if state.modes() != Modes::One || state.dim() != self.dim {
            return Err(Error::Shape(format!(
                "effective squeezing needs a single-mode state of dimension {}",
                self.dim
            )));
        }
        let d = match axis {
            Axis::Q => &self.shift_q,
            Axis::P => &self.shift_p,
        };
        let psi = state.amplitudes();
        let overlap = inner(psi, &d.matvec(psi)?).norm();
        Ok(delta_from_overlap(overlap))
    }

    pub fn report(&self, state: &StateVector) -> Result<EffectiveSqueezingReport> {
        Ok(EffectiveSqueezingReport {
            delta_q: self.delta(state, Axis::Q)?,
            delta_p: self.delta(state, Axis::P)?,
        })
    }
}

/// `sqrt(ln(1/|x|^2) / pi)`, with the edge cases pinned to 0 and infinity.
pub fn delta_from_overlap(overlap: f64) -> f64 {
    if overlap >= 1.0 {
        0.0
    } else if overlap <= 0.0 {
        f64::INFINITY
    } else {
        (-2.0 * overlap.ln() / PI).sqrt()
    }
}

pub fn effective_squeezing(cfg: &FockConfig, state: &StateVector, axis: Axis) -> Result<f64> {
    SqueezingProbe::new(cfg)?.delta(state, axis)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveSqueezingReport {
    pub delta_q: f64,
    pub delta_p: f64,
}

/// Squeezing in dB relative to vacuum, `-10 log10(2 delta^2)`.
pub fn sgkp_db(delta: f64) -> f64 {
    -10.0 * (2.0 * delta * delta).log10()
}

/// `n` evenly spaced points covering `[min, max]`.
pub fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![min],
        _ => (0..n).map(|i| min + (max - min) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Wigner function sampled on a grid, one row per `q` value.
#[derive(Debug, Clone, Serialize)]
pub struct WignerGrid {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub values: Vec<f64>,
}

impl WignerGrid {
    pub fn at(&self, iq: usize, ip: usize) -> f64 {
        self.values[iq * self.p.len() + ip]
    }

    pub fn row(&self, iq: usize) -> &[f64] {
        &self.values[iq * self.p.len()..(iq + 1) * self.p.len()]
    }

    /// Riemann-sum integral over the grid.
    pub fn integral(&self) -> f64 {
        let dq = if self.q.len() > 1 { self.q[1] - self.q[0] } else { 1.0 };
        let dp = if self.p.len() > 1 { self.p[1] - self.p[0] } else { 1.0 };
        self.values.iter().sum::<f64>() * dq * dp
    }
}

pub const DEFAULT_GRID_MIN: f64 = -5.0;
pub const DEFAULT_GRID_MAX: f64 = 5.0;
pub const DEFAULT_GRID_POINTS: usize = 201;

/// Wigner function `W(q, p) = (1/pi) <D(a) Pi D(a)^dagger>` with
/// `a = (q + i p)/sqrt(2)` and `Pi` the parity, normalized so it integrates
/// to 1. Evaluated with the Laguerre recurrence on the density matrix.
pub fn wigner(state: &StateVector, q: &[f64], p: &[f64]) -> Result<WignerGrid> {
    if state.modes() != Modes::One {
        return Err(Error::Shape("Wigner function of a two-mode state".into()));
    }
    let c = state.amplitudes();
    let values: Vec<f64> = q
        .par_iter()
        .flat_map_iter(|&x| p.iter().map(move |&y| wigner_point(c, x, y)))
        .collect();
    Ok(WignerGrid {
        q: q.to_vec(),
        p: p.to_vec(),
        values,
    })
}

fn wigner_point(c: &[C64], x: f64, y: f64) -> f64 {
    let m_max = c.len();
    let a = C64::new(x, y) / 2f64.sqrt();
    let two_a = a * 2.0;
    let rho = |m: usize, n: usize| c[m] * c[n].conj();

    let mut w = vec![C64::new(0.0, 0.0); m_max];
    w[0] = C64::new((-2.0 * a.norm_sqr()).exp() / PI, 0.0);
    let mut total = (rho(0, 0) * w[0]).re;
    for n in 1..m_max {
        w[n] = two_a * w[n - 1] / (n as f64).sqrt();
        total += 2.0 * (rho(0, n) * w[n]).re;
    }
    for m in 1..m_max {
        let sm = (m as f64).sqrt();
        let mut temp = w[m];
        w[m] = (two_a.conj() * temp - sm * w[m - 1]) / sm;
        total += (rho(m, m) * w[m]).re;
        for n in m + 1..m_max {
            let next = (two_a * w[n - 1] - sm * temp) / (n as f64).sqrt();
            temp = w[n];
            w[n] = next;
            total += 2.0 * (rho(m, n) * w[n]).re;
        }
    }
    total
}

/// Hermite functions `phi_0(x) .. phi_{n-1}(x)`, the position
/// wavefunctions of the Fock states.
pub fn hermite_functions(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(PI.powf(-0.25) * (-x * x / 2.0).exp());
    if n > 1 {
        out.push(2f64.sqrt() * x * out[0]);
    }
    for k in 1..n.saturating_sub(1) {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// `|psi(q)|^2` at each requested position.
pub fn position_density(state: &StateVector, q: &[f64]) -> Result<Vec<f64>> {
    if state.modes() != Modes::One {
        return Err(Error::Shape("position density of a two-mode state".into()));
    }
    let c = state.amplitudes();
    Ok(q.iter()
        .map(|&x| {
            let phi = hermite_functions(c.len(), x);
            c.iter().zip(&phi).map(|(a, f)| a * *f).sum::<C64>().norm_sqr()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{squeezed_vacuum, StateVector};

    #[test]
    fn fidelity_is_overlap_magnitude() {
        let a = StateVector::from_real(&[1.0, 0.0]);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let b = StateVector::from_real(&[h, h]);
        assert!((fidelity(&a, &b).unwrap() - h).abs() < 1e-15);
        assert!(fidelity(&a, &StateVector::from_real(&[1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn sgkp_reference_points() {
        assert!((sgkp_db(0.4) - 4.949).abs() < 1e-3);
        assert!(sgkp_db(0.5f64.sqrt()).abs() < 1e-12);
        assert!((sgkp_db(0.35) - 6.108).abs() < 1e-3);
    }

    #[test]
    fn delta_edge_cases() {
        assert_eq!(delta_from_overlap(1.0), 0.0);
        assert_eq!(delta_from_overlap(1.0 + 1e-15), 0.0);
        assert_eq!(delta_from_overlap(0.0), f64::INFINITY);
    }

    #[test]
    fn vacuum_delta_is_vacuum_width() {
        let cfg = FockConfig::new(40).unwrap();
        let probe = SqueezingProbe::new(&cfg).unwrap();
        let r = probe.report(&StateVector::vacuum(40)).unwrap();
        // |<0|D(sqrt pi)|0>| = exp(-pi/2), so delta = 1.
        assert!((r.delta_q - 1.0).abs() < 1e-10);
        assert!((r.delta_p - 1.0).abs() < 1e-10);
    }

    #[test]
    fn squeezed_vacuum_deltas_split() {
        let cfg = FockConfig::default();
        let probe = SqueezingProbe::new(&cfg).unwrap();
        let s = squeezed_vacuum(&cfg, 0.6).unwrap();
        let r = probe.report(&s).unwrap();
        // Position-squeezed: narrow in q, so the q-shift overlap is small.
        assert!(r.delta_q > 1.0 && r.delta_p < 1.0, "{r:?}");
    }

    #[test]
    fn vacuum_wigner_origin() {
        let g = wigner(&StateVector::vacuum(10), &[0.0, 1.0], &[0.0]).unwrap();
        assert!((g.at(0, 0) - 1.0 / PI).abs() < 1e-14);
        assert!((g.at(1, 0) - (-1.0f64).exp() / PI).abs() < 1e-14);
    }

    #[test]
    fn single_photon_wigner_is_negative_at_origin() {
        let g = wigner(&StateVector::fock(5, 1).unwrap(), &[0.0], &[0.0]).unwrap();
        assert!((g.at(0, 0) + 1.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn hermite_functions_are_normalized() {
        let xs = linspace(-12.0, 12.0, 4001);
        let dx = xs[1] - xs[0];
        let mut norms = vec![0.0; 8];
        for &x in &xs {
            for (n, f) in hermite_functions(8, x).iter().enumerate() {
                norms[n] += f * f * dx;
            }
        }
        for v in norms {
            assert!((v - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(-5.0, 5.0, 201);
        assert_eq!(v[0], -5.0);
        assert_eq!(v[200], 5.0);
        assert!((v[100]).abs() < 1e-15);
    }
}
