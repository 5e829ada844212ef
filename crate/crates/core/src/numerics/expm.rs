use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance::{Tolerances, DEFAULT};

const MAX_TERMS: usize = 60;

/// `exp(g)` for a skew-Hermitian generator, by scaling and squaring of a
/// truncated Taylor series.
pub fn expm_skew_hermitian(g: &ComplexMatrix) -> Result<ComplexMatrix> {
    expm_skew_hermitian_with(g, &DEFAULT)
}

pub fn expm_skew_hermitian_with(g: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    if !g.is_square() {
        return Err(Error::Shape(format!("generator is {}x{}", g.rows(), g.cols())));
    }
    let defect = g.add(&g.adjoint())?.max_abs();
    if defect > tol.skew_hermitian * g.max_abs().max(1.0) {
        return Err(Error::NotSkewHermitian(defect));
    }
    let u = expm_scaled_taylor(g, tol.expm_series);
    let unitarity = u.unitarity_defect();
    if unitarity > 1e-10 {
        return Err(Error::NoConvergence {
            index: 0,
            iterations: MAX_TERMS,
        });
    }
    Ok(u)
}

fn expm_scaled_taylor(g: &ComplexMatrix, series_tol: f64) -> ComplexMatrix {
    let n = g.rows();
    let norm = g.norm_inf();
    // Scale so the series argument has norm at most 1/2.
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let x = g.scale((0.5f64).powi(squarings).into());
    let stop = series_tol * (0.5f64).powi(squarings);

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=MAX_TERMS {
        term = (&term * &x).scale((1.0 / k as f64).into());
        sum = sum.add(&term).expect("same shape");
        if term.norm_inf() <= stop.min(f64::EPSILON) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::C64;

    #[test]
    fn zero_generator_gives_identity() {
        let u = expm_skew_hermitian(&ComplexMatrix::zeros(4, 4)).unwrap();
        assert_eq!(u, ComplexMatrix::identity(4));
    }

    #[test]
    fn quarter_rotation() {
        let theta = std::f64::consts::FRAC_PI_2;
        let g = ComplexMatrix::from_real(2, 2, &[0.0, theta, -theta, 0.0]).unwrap();
        let u = expm_skew_hermitian(&g).unwrap();
        let expected = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        assert!(u.max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn phase_generator() {
        let g = ComplexMatrix::from_vec(1, 1, vec![C64::new(0.0, 3.0)]).unwrap();
        let u = expm_skew_hermitian(&g).unwrap();
        assert!((u[(0, 0)] - C64::from_polar(1.0, 3.0)).norm() < 1e-13);
    }

    #[test]
    fn rejects_hermitian_generator() {
        let g = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(matches!(expm_skew_hermitian(&g), Err(Error::NotSkewHermitian(_))));
    }

    #[test]
    fn rejects_non_square() {
        assert!(expm_skew_hermitian(&ComplexMatrix::zeros(2, 3)).is_err());
    }
}
