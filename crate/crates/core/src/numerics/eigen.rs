//! Eigendecomposition of real symmetric tridiagonal matrices by implicit
//! QL iteration with Wilkinson-style shifts.
//!
//! Quadrature operators are tridiagonal in the Fock basis, so this is the
//! only eigensolver the simulator needs.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tolerance::{Tolerances, DEFAULT};

/// Eigenpairs of a real symmetric tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TridiagonalEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

pub fn eig_hermitian_tridiagonal(diag: &[f64], offdiag: &[f64]) -> Result<TridiagonalEigen> {
    eig_hermitian_tridiagonal_with(diag, offdiag, &DEFAULT)
}

pub fn eig_hermitian_tridiagonal_with(diag: &[f64], offdiag: &[f64], tol: &Tolerances) -> Result<TridiagonalEigen> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::Shape("empty tridiagonal matrix".into()));
    }
    if offdiag.len() + 1 != n {
        return Err(Error::Shape(format!(
            "off-diagonal has length {}, expected {}",
            offdiag.len(),
            n - 1
        )));
    }
    let (values, vectors) = tql2(diag, offdiag, tol.eigen_max_sweeps)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut v: Vec<f64> = (0..n).map(|i| vectors[i * n + k]).collect();
        fix_sign(&mut v);
        for (i, x) in v.into_iter().enumerate() {
            eigenvectors[(i, col)] = C64::new(x, 0.0);
        }
    }

    for (col, &lambda) in eigenvalues.iter().enumerate() {
        let residual = tridiagonal_residual(diag, offdiag, &eigenvectors, col, lambda);
        if residual > tol.eigen_residual {
            return Err(Error::NoConvergence {
                index: col,
                iterations: tol.eigen_max_sweeps,
            });
        }
    }
    Ok(TridiagonalEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Largest-magnitude entry made positive. Ties go to the lowest index.
fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() * (1.0 + 1e-12) {
            best = i;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn tridiagonal_residual(diag: &[f64], offdiag: &[f64], vecs: &ComplexMatrix, col: usize, lambda: f64) -> f64 {
    let n = diag.len();
    let v = |i: usize| vecs[(i, col)].re;
    let mut acc = 0.0;
    for i in 0..n {
        let mut av = diag[i] * v(i);
        if i > 0 {
            av += offdiag[i - 1] * v(i - 1);
        }
        if i + 1 < n {
            av += offdiag[i] * v(i + 1);
        }
        acc += (av - lambda * v(i)).powi(2);
    }
    acc.sqrt()
}

/// Implicit QL on a symmetric tridiagonal matrix (EISPACK `tql2` scheme).
/// Returns unsorted eigenvalues and the row-major eigenvector matrix.
fn tql2(diag: &[f64], offdiag: &[f64], max_sweeps: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(offdiag);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > max_sweeps {
                    return Err(Error::NoConvergence {
                        index: l,
                        iterations: max_sweeps,
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let h = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * h;
                        z[k * n + i] = c * z[k * n + i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok((d, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_quadrature() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let eig = eig_hermitian_tridiagonal(&[0.0, 0.0], &[h]).unwrap();
        assert!((eig.eigenvalues[0] + h).abs() < 1e-15);
        assert!((eig.eigenvalues[1] - h).abs() < 1e-15);
    }

    #[test]
    fn single_entry() {
        let eig = eig_hermitian_tridiagonal(&[3.5], &[]).unwrap();
        assert_eq!(eig.eigenvalues, vec![3.5]);
        assert_eq!(eig.eigenvectors[(0, 0)].re, 1.0);
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let eig = eig_hermitian_tridiagonal(&[2.0, -1.0, 0.5], &[0.0, 0.0]).unwrap();
        assert_eq!(eig.eigenvalues, vec![-1.0, 0.5, 2.0]);
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(eig_hermitian_tridiagonal(&[1.0, 2.0], &[]).is_err());
        assert!(eig_hermitian_tridiagonal(&[], &[]).is_err());
    }

    #[test]
    fn largest_entry_is_positive() {
        let off: Vec<f64> = (1..12).map(|n| (n as f64 / 2.0).sqrt()).collect();
        let eig = eig_hermitian_tridiagonal(&[0.0; 12], &off).unwrap();
        for col in 0..12 {
            let v = eig.eigenvectors.column(col);
            let big = v
                .iter()
                .map(|z| z.re)
                .fold(0.0f64, |a, x| if x.abs() > a.abs() { x } else { a });
            assert!(big > 0.0);
        }
    }

    #[test]
    fn sweep_cap_is_reported() {
        let off: Vec<f64> = (1..30).map(|n| (n as f64).sqrt()).collect();
        let tol = Tolerances {
            eigen_max_sweeps: 0,
            ..DEFAULT
        };
        let err = eig_hermitian_tridiagonal_with(&[0.0; 30], &off, &tol).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. }));
    }
}
