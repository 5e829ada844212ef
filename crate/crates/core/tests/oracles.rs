//! Comparisons against closed forms and independent algorithms.

use std::f64::consts::PI;

use qunaught::fock::{beamsplitter, displacement, quadrature, squeezed_vacuum, FockConfig, StateVector};
use qunaught::homodyne::{quadrature_basis, Axis};
use qunaught::metrics::{sgkp_db, wigner, SqueezingProbe};
use qunaught::numerics::{ComplexMatrix, C64};

mod common;
use common::{displacement_element, factorial, gauss_hermite_nodes};

#[test]
fn quadrature_spectrum_matches_gauss_hermite_nodes() {
    for dim in [3, 10, 27, 50] {
        let cfg = FockConfig::new(dim).unwrap();
        let basis = quadrature_basis(&cfg, Axis::Q).unwrap();
        // Nodes of H_n are the eigenvalues of the truncated (a + a^dagger)/sqrt(2).
        let nodes = gauss_hermite_nodes(dim);
        for (e, x) in basis.eigenvalues.iter().zip(&nodes) {
            assert!((e - x).abs() < 1e-9, "dim {dim}: {e} vs {x}");
        }
    }
}

#[test]
fn dim_three_spectrum_is_hermite_roots() {
    let cfg = FockConfig::new(3).unwrap();
    let basis = quadrature_basis(&cfg, Axis::Q).unwrap();
    let r = 1.5f64.sqrt();
    for (e, x) in basis.eigenvalues.iter().zip([-r, 0.0, r]) {
        assert!((e - x).abs() < 1e-14);
    }
}

#[test]
fn displacement_matches_laguerre_series() {
    let cfg = FockConfig::default();
    for beta in [C64::new(PI.sqrt(), 0.0), C64::new(0.0, PI.sqrt()), C64::new(0.6, -1.1)] {
        let d = displacement(&cfg, beta).unwrap();
        for m in 0..30 {
            for n in 0..30 {
                let exact = displacement_element(m, n, beta);
                assert!((d[(m, n)] - exact).norm() < 1e-8, "beta {beta} <{m}|D|{n}>");
            }
        }
    }
}

#[test]
fn beamsplitter_on_single_mode_fock_states() {
    let dim = 12;
    let cfg = FockConfig::new(dim).unwrap();
    let bs = beamsplitter(&cfg).unwrap();
    let binom = |n: usize, k: usize| factorial(n) / (factorial(k) * factorial(n - k));
    for n in 0..dim {
        let mut amps = vec![C64::new(0.0, 0.0); dim * dim];
        amps[n * dim] = C64::new(1.0, 0.0);
        let out = bs.apply(&StateVector::two_mode(dim, amps).unwrap()).unwrap();
        for k in 0..=n {
            let sign = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
            let expected = sign * binom(n, k).sqrt() / 2f64.powf(n as f64 / 2.0);
            let got = out.amplitudes()[k * dim + (n - k)];
            assert!((got.re - expected).abs() < 1e-12 && got.im.abs() < 1e-12, "n={n} k={k}");
        }
    }
}

#[test]
fn effective_squeezing_of_gaussian_states() {
    let cfg = FockConfig::default();
    let probe = SqueezingProbe::new(&cfg).unwrap();
    let vac = probe.report(&StateVector::vacuum(50)).unwrap();
    assert!((vac.delta_q - 1.0).abs() < 1e-4 && (vac.delta_p - 1.0).abs() < 1e-4);
    for delta in [0.3, 0.4, 0.5, 1.0] {
        let s = squeezed_vacuum(&cfg, delta).unwrap();
        // q-variance delta^2/2, so |<D(i sqrt(pi))>| = exp(-pi delta^2 / 2).
        let r = probe.report(&s).unwrap();
        assert!((r.delta_p - delta).abs() < 1e-3, "delta {delta}: {r:?}");
    }
    assert!((sgkp_db(0.4) - 4.95).abs() < 0.005);
}

fn displaced_parity_wigner(cfg: &FockConfig, state: &StateVector, q: f64, p: f64) -> f64 {
    let alpha = C64::new(q, p) / 2f64.sqrt();
    let d = displacement(cfg, -alpha).unwrap();
    let shifted = d.matvec(state.amplitudes()).unwrap();
    let parity: f64 = shifted
        .iter()
        .enumerate()
        .map(|(n, z)| if n % 2 == 0 { z.norm_sqr() } else { -z.norm_sqr() })
        .sum();
    parity / PI
}

#[test]
fn wigner_matches_displaced_parity() {
    // The oracle displaces the state, so it runs in a larger space.
    let cfg = FockConfig::new(80).unwrap();
    let amps: Vec<C64> = (0..80)
        .map(|n| {
            if n < 6 {
                C64::new(1.0 / (n as f64 + 1.0), 0.3 * n as f64)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    let state = StateVector::single(amps).normalized().unwrap();
    let pts = [-1.7, -0.4, 0.0, 0.9, 2.2];
    let grid = wigner(&state, &pts, &pts).unwrap();
    for (iq, &q) in pts.iter().enumerate() {
        for (ip, &p) in pts.iter().enumerate() {
            let oracle = displaced_parity_wigner(&cfg, &state, q, p);
            assert!(
                (grid.at(iq, ip) - oracle).abs() < 1e-9,
                "({q}, {p}): {} vs {oracle}",
                grid.at(iq, ip)
            );
        }
    }
}

#[test]
fn coherent_state_wigner_peaks_at_its_amplitude() {
    let cfg = FockConfig::new(40).unwrap();
    let alpha = C64::new(1.0, 0.5);
    let d = displacement(&cfg, alpha).unwrap();
    let coherent = StateVector::single(d.column(0));
    // Expected peak at q = sqrt(2) Re(alpha), p = sqrt(2) Im(alpha).
    let q: Vec<f64> = (0..=40).map(|i| -2.0 + 0.1 * i as f64).collect();
    let grid = wigner(&coherent, &q, &q).unwrap();
    let best = (0..grid.values.len())
        .max_by(|&a, &b| grid.values[a].total_cmp(&grid.values[b]))
        .unwrap();
    let (iq, ip) = (best / q.len(), best % q.len());
    assert!((q[iq] - 2f64.sqrt()).abs() < 0.06);
    assert!((q[ip] - 2f64.sqrt() * 0.5).abs() < 0.06);
    assert!((grid.values[best] - 1.0 / PI).abs() < 0.01);
}

#[test]
fn quadrature_matrix_is_consistent_with_basis() {
    let cfg = FockConfig::new(20).unwrap();
    for axis in [Axis::Q, Axis::P] {
        let b = quadrature_basis(&cfg, axis).unwrap();
        let x = quadrature(&cfg, axis.angle());
        let v = &b.eigenvectors;
        let lam = ComplexMatrix::from_fn(20, 20, |i, j| {
            if i == j {
                C64::new(b.eigenvalues[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let recon = v.matmul(&lam).unwrap().matmul(&v.adjoint()).unwrap();
        assert!(recon.max_abs_diff(&x) < 1e-10);
    }
}
