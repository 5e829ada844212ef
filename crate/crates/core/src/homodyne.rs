//! Projective quadrature measurements on the truncated space.
//!
//! Outcomes are the eigenvalues of the truncated quadrature matrix, indexed
//! in ascending order: at dimension 50 indices 0..=24 carry the negative
//! outcomes and index 24 is the one closest to zero. The measured mode is
//! always mode 1 of a two-mode state.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{quadrature_tridiagonal, FockConfig, Modes, StateVector};
use crate::numerics::{eig_hermitian_tridiagonal_with, ComplexMatrix, C64, ZERO};
use crate::tolerance::DEFAULT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Q,
    P,
}

impl Axis {
    pub fn angle(self) -> f64 {
        match self {
            Axis::Q => 0.0,
            Axis::P => FRAC_PI_2,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Axis::Q => 'q',
            Axis::P => 'p',
        }
    }

    pub fn from_char(c: char) -> Option<Axis> {
        match c {
            'q' | 'Q' => Some(Axis::Q),
            'p' | 'P' => Some(Axis::P),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Eigenbasis of a truncated quadrature.
#[derive(Debug, Clone)]
pub struct QuadratureBasis {
    pub axis: Axis,
    pub dim: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `i` is the eigenvector for `eigenvalues[i]`.
    pub eigenvectors: ComplexMatrix,
}

impl QuadratureBasis {
    /// Index of the outcome mirrored through zero.
    pub fn mirror(&self, index: usize) -> usize {
        self.dim - 1 - index
    }

    /// Outcome `q / sqrt(2 pi)`, in units of the lattice spacing.
    pub fn rescaled(&self, index: usize) -> f64 {
        self.eigenvalues[index] / (2.0 * PI).sqrt()
    }

    /// Innermost outcome on the non-positive side.
    pub fn center_index(&self) -> usize {
        (self.dim - 1) / 2
    }
}

/// Eigenpairs of `quadrature(cfg, axis)`. The `p` basis is the image of the
/// `q` basis under `|n> -> i^n |n>`, so both share eigenvalues bit-for-bit.
pub fn quadrature_basis(cfg: &FockConfig, axis: Axis) -> Result<QuadratureBasis> {
    let d = cfg.dim;
    let (diag, off) = quadrature_tridiagonal(d);
    let eig = eig_hermitian_tridiagonal_with(&diag, &off, &cfg.tolerances)?;

    for i in 0..d {
        let asym = (eig.eigenvalues[i] + eig.eigenvalues[d - 1 - i]).abs();
        if asym > 1e-10 {
            return Err(Error::Invariant(format!(
                "quadrature spectrum not symmetric at {i}: {asym:e}"
            )));
        }
    }

    let eigenvectors = match axis {
        Axis::Q => eig.eigenvectors,
        Axis::P => {
            let mut v = ComplexMatrix::zeros(d, d);
            for col in 0..d {
                let mut column: Vec<C64> = (0..d)
                    .map(|n| eig.eigenvectors[(n, col)] * C64::i().powu(n as u32))
                    .collect();
                fix_phase(&mut column);
                for (n, z) in column.into_iter().enumerate() {
                    v[(n, col)] = z;
                }
            }
            v
        }
    };
    Ok(QuadratureBasis {
        axis,
        dim: d,
        eigenvalues: eig.eigenvalues,
        eigenvectors,
    })
}

/// Rotates a vector so its largest-magnitude entry is real positive.
fn fix_phase(v: &mut [C64]) {
    let mut best = 0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[best].norm() * (1.0 + 1e-12) {
            best = i;
        }
    }
    let r = v[best].norm();
    if r > 0.0 {
        let phase = v[best].conj() / r;
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

/// Unnormalized conditional states `(<v_i| (x) I)|psi>` for every outcome.
#[derive(Debug, Clone)]
pub struct Measurement {
    pub axis: Axis,
    pub probabilities: Vec<f64>,
    /// Row `i` is the unnormalized kept-mode state for outcome `i`.
    pub amplitudes: ComplexMatrix,
}

impl Measurement {
    pub fn post_state(&self, index: usize, floor: f64) -> Option<StateVector> {
        let p = self.probabilities[index];
        if p < floor {
            return None;
        }
        let s = p.sqrt();
        Some(StateVector::single(
            self.amplitudes.row(index).iter().map(|z| z / s).collect(),
        ))
    }
}

pub fn measure(state2: &StateVector, basis: &QuadratureBasis) -> Result<Measurement> {
    if state2.modes() != Modes::Two || state2.dim() != basis.dim {
        return Err(Error::Shape(format!(
            "measurement of dimension {} needs a two-mode state of the same dimension",
            basis.dim
        )));
    }
    let d = basis.dim;
    let psi = ComplexMatrix::from_vec(d, d, state2.amplitudes().to_vec())?;
    let amplitudes = basis.eigenvectors.adjoint().matmul(&psi)?;
    let probabilities = (0..d)
        .map(|i| amplitudes.row(i).iter().map(|z| z.norm_sqr()).sum())
        .collect();
    Ok(Measurement {
        axis: basis.axis,
        probabilities,
        amplitudes,
    })
}

/// Which side-peak naming rules apply to a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeakScheme {
    /// First measurement: central peak `C`, side peak `S1`, its more
    /// probable neighbour `S2` and the other neighbour `S2'`.
    FirstLevel,
    /// Second measurement: `C` and the side peak `S` one lattice spacing out.
    SecondLevel,
}

impl PeakScheme {
    pub fn for_axis(axis: Axis) -> Self {
        match axis {
            Axis::Q => PeakScheme::FirstLevel,
            Axis::P => PeakScheme::SecondLevel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PeakKind {
    C,
    S1,
    S2,
    /// Neighbour of `S1` opposite to `S2`. Labeled but never selected by default.
    S2Twin,
    S,
}

impl PeakKind {
    pub fn name(self) -> &'static str {
        match self {
            PeakKind::C => "C",
            PeakKind::S1 => "S1",
            PeakKind::S2 => "S2",
            PeakKind::S2Twin => "S2'",
            PeakKind::S => "S",
        }
    }
}

impl FromStr for PeakKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "C" | "c" => Ok(PeakKind::C),
            "S1" | "s1" => Ok(PeakKind::S1),
            "S2" | "s2" => Ok(PeakKind::S2),
            "S2'" | "s2'" => Ok(PeakKind::S2Twin),
            "S" | "s" => Ok(PeakKind::S),
            other => Err(Error::Config(format!("unknown peak label '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeakLabel {
    pub kind: PeakKind,
    /// Label sits on the positive side, mirroring a negative-side peak.
    pub mirror: bool,
}

impl fmt::Display for PeakLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mirror {
            write!(f, "mirror-{}", self.kind.name())
        } else {
            write!(f, "{}", self.kind.name())
        }
    }
}

/// Outcome probabilities of one homodyne measurement.
#[derive(Debug, Clone, Serialize)]
pub struct OutcomeDistribution {
    pub axis: Axis,
    pub eigenvalues: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub rescaled_outcomes: Vec<f64>,
    pub peak_labels: BTreeMap<usize, PeakLabel>,
}

impl OutcomeDistribution {
    pub fn from_measurement(m: &Measurement, basis: &QuadratureBasis) -> Self {
        OutcomeDistribution {
            axis: basis.axis,
            eigenvalues: basis.eigenvalues.clone(),
            probabilities: m.probabilities.clone(),
            rescaled_outcomes: (0..basis.dim).map(|i| basis.rescaled(i)).collect(),
            peak_labels: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.probabilities.len()
    }

    /// Negative-side index carrying `kind`, if labeled.
    pub fn index_of(&self, kind: PeakKind) -> Option<usize> {
        self.peak_labels
            .iter()
            .find(|(_, l)| l.kind == kind && !l.mirror)
            .map(|(&i, _)| i)
    }

    pub fn label(&self, index: usize) -> Option<PeakLabel> {
        self.peak_labels.get(&index).copied()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

/// Measures mode 1 of a normalized two-mode state.
pub fn outcome_distribution(state2: &StateVector, basis: &QuadratureBasis) -> Result<OutcomeDistribution> {
    state2.ensure_normalized(1e-10)?;
    let m = measure(state2, basis)?;
    Ok(OutcomeDistribution::from_measurement(&m, basis))
}

/// Result of projecting onto one outcome.
#[derive(Debug, Clone)]
pub struct Projection {
    pub probability: f64,
    /// `None` when the probability is below the underflow floor.
    pub post_state: Option<StateVector>,
}

pub fn project_outcome(state2: &StateVector, basis: &QuadratureBasis, index: usize) -> Result<Projection> {
    if index >= basis.dim {
        return Err(Error::OutcomeIndex { index, dim: basis.dim });
    }
    if state2.modes() != Modes::Two || state2.dim() != basis.dim {
        return Err(Error::Shape(
            "projection needs a two-mode state of the basis dimension".into(),
        ));
    }
    let d = basis.dim;
    let psi = state2.amplitudes();
    let mut out = vec![ZERO; d];
    for n in 0..d {
        let v = basis.eigenvectors[(n, index)].conj();
        if v == ZERO {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(&psi[n * d..(n + 1) * d]) {
            *o += v * x;
        }
    }
    let probability: f64 = out.iter().map(|z| z.norm_sqr()).sum();
    let post_state = if probability < DEFAULT.probability_floor {
        None
    } else {
        let s = probability.sqrt();
        Some(StateVector::single(out.into_iter().map(|z| z / s).collect()))
    };
    Ok(Projection {
        probability,
        post_state,
    })
}

/// Labels peaks using the scheme implied by the measured axis.
pub fn label_peaks(dist: &OutcomeDistribution) -> OutcomeDistribution {
    label_peaks_with(dist, PeakScheme::for_axis(dist.axis))
}

/// Peaks below this fraction of the largest probability are ignored.
const PEAK_RELATIVE_FLOOR: f64 = 1e-3;

pub fn label_peaks_with(dist: &OutcomeDistribution, scheme: PeakScheme) -> OutcomeDistribution {
    let mut out = dist.clone();
    out.peak_labels.clear();
    let p = &dist.probabilities;
    let d = p.len();
    if d < 2 {
        return out;
    }
    let center = (d - 1) / 2;
    let floor = PEAK_RELATIVE_FLOOR * p.iter().cloned().fold(0.0, f64::max);

    // Local maxima on the non-positive half, 0..=center.
    let is_max = |i: usize| {
        let left_ok = i == 0 || p[i] > p[i - 1];
        let right_ok = i == center || p[i] >= p[i + 1];
        left_ok && right_ok && p[i] >= floor
    };
    let maxima: Vec<usize> = (0..=center).filter(|&i| is_max(i)).collect();

    let mut labels: Vec<(usize, PeakKind)> = Vec::new();
    let has_c = maxima.contains(&center);
    if has_c {
        labels.push((center, PeakKind::C));
    }
    let side: Vec<usize> = maxima.iter().copied().filter(|&i| i != center).collect();

    match scheme {
        PeakScheme::FirstLevel => {
            let s1 = side
                .iter()
                .copied()
                .max_by(|&a, &b| p[a].total_cmp(&p[b]).then(b.cmp(&a)));
            if let Some(s1) = s1 {
                labels.push((s1, PeakKind::S1));
                let outer = s1.checked_sub(1);
                let inner = (s1 + 1 < center || (s1 + 1 == center && !has_c)).then_some(s1 + 1);
                let (s2, twin) = match (outer, inner) {
                    (Some(o), Some(i)) => {
                        if p[i] > p[o] {
                            (Some(i), Some(o))
                        } else {
                            (Some(o), Some(i))
                        }
                    }
                    (Some(o), None) => (Some(o), None),
                    (None, Some(i)) => (Some(i), None),
                    (None, None) => (None, None),
                };
                if let Some(s2) = s2 {
                    labels.push((s2, PeakKind::S2));
                }
                if let Some(t) = twin {
                    labels.push((t, PeakKind::S2Twin));
                }
            }
        }
        PeakScheme::SecondLevel => {
            let lattice = -1.0;
            let s = side.iter().copied().min_by(|&a, &b| {
                let da = (dist.rescaled_outcomes[a] - lattice).abs();
                let db = (dist.rescaled_outcomes[b] - lattice).abs();
                da.total_cmp(&db)
            });
            if let Some(s) = s {
                labels.push((s, PeakKind::S));
            }
        }
    }

    for (i, kind) in labels {
        out.peak_labels.insert(i, PeakLabel { kind, mirror: false });
        let m = d - 1 - i;
        if m != i {
            out.peak_labels.insert(m, PeakLabel { kind, mirror: true });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_two_basis() {
        let cfg = FockConfig::new(2).unwrap();
        let b = quadrature_basis(&cfg, Axis::Q).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b.eigenvalues[0] + h).abs() < 1e-15);
        assert!((b.eigenvalues[1] - h).abs() < 1e-15);
    }

    #[test]
    fn p_spectrum_equals_q_spectrum() {
        let cfg = FockConfig::default();
        let q = quadrature_basis(&cfg, Axis::Q).unwrap();
        let p = quadrature_basis(&cfg, Axis::P).unwrap();
        assert_eq!(q.eigenvalues, p.eigenvalues);
        assert_eq!(q.center_index(), 24);
        assert!((q.rescaled(24) + 0.062).abs() < 5e-4);
    }

    #[test]
    fn p_eigenvectors_diagonalize_p() {
        let cfg = FockConfig::new(12).unwrap();
        let b = quadrature_basis(&cfg, Axis::P).unwrap();
        let p = crate::fock::quadrature(&cfg, FRAC_PI_2);
        for i in 0..12 {
            let v = b.eigenvectors.column(i);
            let pv = p.matvec(&v).unwrap();
            let lam = b.eigenvalues[i];
            let res: f64 = pv.iter().zip(&v).map(|(a, x)| (a - x * lam).norm_sqr()).sum();
            assert!(res.sqrt() < 1e-10);
        }
    }

    #[test]
    fn product_vacuum_distribution_is_symmetric() {
        let cfg = FockConfig::new(20).unwrap();
        let b = quadrature_basis(&cfg, Axis::Q).unwrap();
        let vac = StateVector::vacuum(20);
        let s = StateVector::product(&vac, &vac).unwrap();
        let dist = outcome_distribution(&s, &b).unwrap();
        assert!((dist.total() - 1.0).abs() < 1e-12);
        for i in 0..20 {
            let direct = b.eigenvectors[(0, i)].norm_sqr();
            assert!((dist.probabilities[i] - direct).abs() < 1e-14);
            assert!((dist.probabilities[i] - dist.probabilities[19 - i]).abs() < 1e-12);
        }
    }

    #[test]
    fn projection_of_product_returns_kept_factor() {
        let cfg = FockConfig::new(10).unwrap();
        let b = quadrature_basis(&cfg, Axis::P).unwrap();
        let kept = StateVector::from_real(&[0.6, 0.0, 0.8, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let s = StateVector::product(&StateVector::vacuum(10), &kept).unwrap();
        for i in [0, 3, 7] {
            let proj = project_outcome(&s, &b, i).unwrap();
            let post = proj.post_state.unwrap();
            assert!((post.inner(&kept).unwrap().norm() - 1.0).abs() < 1e-12);
        }
        assert!(matches!(project_outcome(&s, &b, 10), Err(Error::OutcomeIndex { .. })));
    }

    #[test]
    fn remeasuring_an_eigenvector_is_certain() {
        let cfg = FockConfig::new(16).unwrap();
        let b = quadrature_basis(&cfg, Axis::Q).unwrap();
        let v = StateVector::single(b.eigenvectors.column(5));
        let s = StateVector::product(&v, &StateVector::vacuum(16)).unwrap();
        let dist = outcome_distribution(&s, &b).unwrap();
        assert!((dist.probabilities[5] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn null_projection_has_no_state() {
        let cfg = FockConfig::new(4).unwrap();
        let b = quadrature_basis(&cfg, Axis::Q).unwrap();
        let zero = StateVector::two_mode(4, vec![ZERO; 16]).unwrap();
        let proj = project_outcome(&zero, &b, 1).unwrap();
        assert_eq!(proj.probability, 0.0);
        assert!(proj.post_state.is_none());
        assert!(outcome_distribution(&zero, &b).is_err());
    }

    #[test]
    fn mirrored_labels_on_symmetric_distribution() {
        let mut p = vec![0.0; 12];
        for (i, x) in [(5, 0.2), (4, 0.05), (3, 0.1), (2, 0.08), (1, 0.04)] {
            p[i] = x;
            p[11 - i] = x;
        }
        let total: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= total);
        let dist = OutcomeDistribution {
            axis: Axis::Q,
            eigenvalues: (0..12).map(|i| i as f64 - 5.5).collect(),
            rescaled_outcomes: (0..12).map(|i| (i as f64 - 5.5) / 2.5).collect(),
            probabilities: p,
            peak_labels: BTreeMap::new(),
        };
        let l = label_peaks(&dist);
        assert_eq!(l.index_of(PeakKind::C), Some(5));
        assert_eq!(l.index_of(PeakKind::S1), Some(3));
        assert_eq!(l.index_of(PeakKind::S2), Some(2));
        assert_eq!(l.index_of(PeakKind::S2Twin), Some(4));
        for (&i, lab) in &l.peak_labels {
            let m = l.peak_labels[&(11 - i)];
            assert_eq!(m.kind, lab.kind);
            assert_ne!(m.mirror, lab.mirror);
        }
    }

    #[test]
    fn peak_tokens_parse() {
        assert_eq!("S1".parse::<PeakKind>().unwrap(), PeakKind::S1);
        assert_eq!("S".parse::<PeakKind>().unwrap(), PeakKind::S);
        assert!("X".parse::<PeakKind>().is_err());
        let l = PeakLabel {
            kind: PeakKind::S2,
            mirror: true,
        };
        assert_eq!(l.to_string(), "mirror-S2");
    }
}
