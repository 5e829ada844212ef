//! Independent oracles shared by the test targets.

#![allow(dead_code)]

use std::f64::consts::PI;

use qunaught::numerics::C64;

/// Gauss-Hermite nodes by Newton iteration on the orthonormal Hermite
/// recurrence, after the classic `gauher` routine.
pub fn gauss_hermite_nodes(n: usize) -> Vec<f64> {
    let pim4 = PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let m = n.div_ceil(2);
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * n as f64 + 1.0).sqrt() - 1.85575 * (2.0 * n as f64 + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * (n as f64).powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            let pp = (2.0 * n as f64).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
    }
    x.sort_by(f64::total_cmp);
    x
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Generalized Laguerre polynomial by its three-term recurrence.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let (mut l0, mut l1) = (1.0, 1.0 + alpha - x);
    if n == 0 {
        return l0;
    }
    for k in 1..n {
        let kf = k as f64;
        let l2 = ((2.0 * kf + 1.0 + alpha - x) * l1 - (kf + alpha) * l0) / (kf + 1.0);
        l0 = l1;
        l1 = l2;
    }
    l1
}

/// `<m|D(beta)|n>` from the Laguerre closed form.
pub fn displacement_element(m: usize, n: usize, beta: C64) -> C64 {
    let b2 = beta.norm_sqr();
    let gauss = (-b2 / 2.0).exp();
    if m >= n {
        let pref = (factorial(n) / factorial(m)).sqrt();
        beta.powu((m - n) as u32) * pref * gauss * laguerre(n, (m - n) as f64, b2)
    } else {
        let pref = (factorial(m) / factorial(n)).sqrt();
        (-beta.conj()).powu((n - m) as u32) * pref * gauss * laguerre(m, (n - m) as f64, b2)
    }
}
