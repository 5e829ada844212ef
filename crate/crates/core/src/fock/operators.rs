use std::f64::consts::FRAC_1_SQRT_2;

use log::warn;

use super::FockConfig;
use crate::error::Result;
use crate::numerics::{expm_skew_hermitian_with, ComplexMatrix, C64};

pub fn annihilation(cfg: &FockConfig) -> ComplexMatrix {
    annihilation_dim(cfg.dim)
}

pub(crate) fn annihilation_dim(dim: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    a
}

pub fn creation(cfg: &FockConfig) -> ComplexMatrix {
    annihilation(cfg).adjoint()
}

pub fn number(cfg: &FockConfig) -> ComplexMatrix {
    ComplexMatrix::from_fn(cfg.dim, cfg.dim, |i, j| {
        if i == j {
            C64::new(i as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// `(a e^{-i angle} + a^dagger e^{i angle}) / sqrt(2)`: `q` at 0, `p` at pi/2.
pub fn quadrature(cfg: &FockConfig, angle: f64) -> ComplexMatrix {
    let phase = C64::from_polar(FRAC_1_SQRT_2, angle);
    let mut x = ComplexMatrix::zeros(cfg.dim, cfg.dim);
    for n in 1..cfg.dim {
        let s = (n as f64).sqrt();
        x[(n - 1, n)] = phase.conj() * s;
        x[(n, n - 1)] = phase * s;
    }
    x
}

/// Diagonal and off-diagonal of the real tridiagonal `q` matrix.
pub fn quadrature_tridiagonal(dim: usize) -> (Vec<f64>, Vec<f64>) {
    let off = (1..dim).map(|n| (n as f64 / 2.0).sqrt()).collect();
    (vec![0.0; dim], off)
}

/// Diagonal map `|n> -> e^{i phi n}|n>`.
pub fn phase_rotation(dim: usize, phi: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            C64::from_polar(1.0, phi * i as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// `D(beta) = exp(beta a^dagger - beta^* a)`, built with
/// `cfg.displacement_padding` extra levels and truncated to `cfg.dim`.
pub fn displacement(cfg: &FockConfig, beta: C64) -> Result<ComplexMatrix> {
    if beta.norm_sqr() > cfg.dim as f64 / 4.0 {
        warn!(
            "displacement |beta|^2 = {:.3} is large for dimension {}; truncation error likely",
            beta.norm_sqr(),
            cfg.dim
        );
    }
    displacement_padded(cfg.dim, cfg.displacement_padding, beta, cfg)
}

/// Displacement at `dim + padding` levels, truncated to `dim`. No size warning.
pub fn displacement_padded(dim: usize, padding: usize, beta: C64, cfg: &FockConfig) -> Result<ComplexMatrix> {
    let work = dim + padding;
    let a = annihilation_dim(work);
    let gen = a.adjoint().scale(beta).sub(&a.scale(beta.conj()))?;
    let full = expm_skew_hermitian_with(&gen, &cfg.tolerances)?;
    Ok(full.truncate(dim))
}
