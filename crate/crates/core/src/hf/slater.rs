//! Slater screening functions and multipole coupling coefficients.

use alloc::vec::Vec;

use crate::grid::RadialGrid;
#[allow(unused_imports)]
use crate::num::*;

/// Squared 3j symbol `(l1 l2 k; 0 0 0)^2`; zero unless the triangle rule
/// holds and `l1 + l2 + k` is even.
pub fn wigner_3j000_sq(l1: u32, l2: u32, k: u32) -> f64 {
    let lsum = l1 + l2 + k;
    if lsum % 2 != 0 {
        return 0.0;
    }
    if k + l1 < l2 || k + l2 < l1 || l1 + l2 < k {
        return 0.0;
    }
    let g = lsum / 2;
    let fact = |m: u32| -> f64 {
        let mut acc = 1.0;
        for i in 2..=m as u64 {
            acc *= i as f64;
        }
        acc
    };
    let ratio = fact(2 * (g - l1)) * fact(2 * (g - l2)) * fact(2 * (g - k)) / fact(lsum + 1);
    let binom = fact(g) / (fact(g - l1) * fact(g - l2) * fact(g - k));
    ratio * binom * binom
}

/// Multipole screening potential
/// `W_k[u_a u_b](r) = r^{-(k+1)} int_{s<r} s^k u_a u_b ds + r^k int_{s>r} s^{-(k+1)} u_a u_b ds`,
/// the `Y_k(ab; r)/r` of the radial exchange equations. Two cumulative
/// sweeps in the log variable.
pub fn screening_potential_k(grid: &RadialGrid, ua: &[f64], ub: &[f64], k: u32) -> Vec<f64> {
    let n = grid.n();
    let kf = k as f64;
    let inner_dr: Vec<f64> = (0..n).map(|i| grid.r(i).powf(kf) * ua[i] * ub[i]).collect();
    let outer_dr: Vec<f64> = (0..n)
        .map(|i| grid.r(i).powf(-kf - 1.0) * ua[i] * ub[i])
        .collect();
    let p = grid.cumulative_dr(&inner_dr);
    let q = grid.cumulative_dr(&outer_dr);
    let q_tot = q[n - 1];
    (0..n)
        .map(|i| {
            let r = grid.r(i);
            r.powf(-kf - 1.0) * p[i] + r.powf(kf) * (q_tot - q[i])
        })
        .collect()
}

/// `F^k(a,b) = int u_a^2(r) W_k[u_b u_b](r) dr`.
pub fn slater_fk(grid: &RadialGrid, ua: &[f64], ub: &[f64], k: u32) -> f64 {
    let w = screening_potential_k(grid, ub, ub, k);
    let integrand: Vec<f64> = (0..grid.n()).map(|i| ua[i] * ua[i] * w[i]).collect();
    grid.integrate_dr(&integrand)
}

/// `G^k(a,b) = int (u_a u_b)(r) W_k[u_a u_b](r) dr`.
pub fn slater_gk(grid: &RadialGrid, ua: &[f64], ub: &[f64], k: u32) -> f64 {
    let w = screening_potential_k(grid, ua, ub, k);
    let integrand: Vec<f64> = (0..grid.n()).map(|i| ua[i] * ub[i] * w[i]).collect();
    grid.integrate_dr(&integrand)
}
