//! Sommerfeld tail bounds for the atomic mean-field potential.

use crate::error::{Error, Result};
#[allow(unused_imports)]
use crate::num::*;
use crate::tf::TfConstants;

/// Upper bound `min{ 81 pi^2/8 r^-4 + mu, Z/r }`.
pub fn sommerfeld_upper(r: f64, mu: f64, z: f64) -> f64 {
    let c = TfConstants::new();
    (c.somm4 * r.powi(-4) + mu).min(z / r)
}

/// Piecewise lower bound: the screened-Coulomb branch inside
/// `beta0 Z^{-1/3}`, the corrected Sommerfeld tail (with the bare-ion
/// `(Z-N)_+/r` floor) outside. Continuous at the matching radius.
pub fn sommerfeld_lower(r: f64, z: f64, n: f64) -> f64 {
    let c = TfConstants::new();
    let r_match = c.beta0 * z.powf(-1.0 / 3.0);
    if r <= r_match {
        z / r - 22.0 / (9.0 * core::f64::consts::PI).powf(2.0 / 3.0) * z.powf(4.0 / 3.0)
    } else {
        let corr = 1.0 + c.a_somm * z.powf(-c.zeta / 3.0) * r.powf(-c.zeta);
        let tail = c.somm4 * r.powi(-4) / (corr * corr);
        let ion = (z - n).max(0.0) / r;
        tail.max(ion)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparatorKind {
    Upper,
    Lower,
}

/// Comparator profiles used to sandwich solutions of
/// `lap w = c_tf w^{3/2}`: `w+_A = 81 pi^2/8 r^-4 (1 + A r^-zeta)` and
/// `w-_a = 81 pi^2/8 r^-4 (1 + a r^-zeta)^{-2}`.
pub fn sommerfeld_comparator(amplitude: f64, r: f64, kind: ComparatorKind) -> Result<f64> {
    let c = TfConstants::new();
    if !(r > 0.0) {
        return Err(Error::domain("comparator radius must be positive"));
    }
    let q = amplitude * r.powf(-c.zeta);
    match kind {
        ComparatorKind::Upper => Ok(c.somm4 * r.powi(-4) * (1.0 + q)),
        ComparatorKind::Lower => {
            if 1.0 + q <= 0.0 {
                return Err(Error::domain(
                    "lower comparator needs 1 + a r^-zeta > 0",
                ));
            }
            Ok(c.somm4 * r.powi(-4) / ((1.0 + q) * (1.0 + q)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn lower_bound_continuous_at_match_radius() {
        let c = TfConstants::new();
        for &z in &[1.0f64, 20.0, 100.0] {
            let r = c.beta0 * z.powf(-1.0 / 3.0);
            let left = sommerfeld_lower(r * (1.0 - 1e-12), z, z);
            let right = sommerfeld_lower(r * (1.0 + 1e-12), z, z);
            assert!(
                ((left - right) / left).abs() < 1e-10,
                "z={z}: {left} vs {right}"
            );
        }
    }

    #[test]
    fn lower_bound_inner_branch_form() {
        let z = 20.0f64;
        let r = 1e-3f64;
        let want = z / r - 22.0 / (9.0 * PI).powf(2.0 / 3.0) * z.powf(4.0 / 3.0);
        assert_eq!(sommerfeld_lower(r, z, z), want);
    }

    #[test]
    fn lower_bound_ionized_branch_reduces_when_neutral() {
        let c = TfConstants::new();
        let z = 10.0f64;
        let r = 5.0f64;
        // neutral: (Z-N)_+ = 0, pure corrected tail
        let corr = 1.0 + c.a_somm * z.powf(-c.zeta / 3.0) * r.powf(-c.zeta);
        let want = c.somm4 * r.powi(-4) / (corr * corr);
        assert_eq!(sommerfeld_lower(r, z, z + 3.0), want);
        // stripped ion at large r: the Coulomb floor wins
        let v = sommerfeld_lower(50.0, z, 1.0);
        assert!((v - 9.0 / 50.0).abs() < 1e-12);
    }

    #[test]
    fn upper_bound_branch_selection() {
        let c = TfConstants::new();
        // huge Z at moderate r: the tail branch is smaller
        let v = sommerfeld_upper(10.0, 0.0, 1e6);
        assert!((v - c.somm4 * 1e-4).abs() < 1e-12);
        assert!((v - 9.9930e-3).abs() < 2e-6);
        // small r: the Coulomb branch is smaller
        let v = sommerfeld_upper(1e-4, 0.0, 1.0);
        assert_eq!(v, 1e4);
        // mu only shifts the tail branch
        let v = sommerfeld_upper(1e3, 7.0, 1e12);
        assert!((v - 7.0).abs() < 1e-9);
    }

    #[test]
    fn comparators_match_stated_forms() {
        let c = TfConstants::new();
        // zero correction reproduces the pure tail
        let v = sommerfeld_comparator(0.0, 2.0, ComparatorKind::Upper).unwrap();
        assert_eq!(v, c.somm4 / 16.0);
        // a = 43.7 at r = 1: 81 pi^2/8 / 44.7^2
        let v = sommerfeld_comparator(43.7, 1.0, ComparatorKind::Lower).unwrap();
        let want = c.somm4 / (44.7 * 44.7);
        assert!((v - want).abs() < 1e-12);
        assert!((v - 5.0017e-2).abs() < 1e-5);
        // domain violation
        assert!(sommerfeld_comparator(-2.0, 1.0, ComparatorKind::Lower).is_err());
    }

    #[test]
    fn comparators_satisfy_the_differential_inequalities() {
        // finite-difference radial Laplacian of the comparators against
        // c_tf w^{3/2}: upper has lap w <= rhs, lower has lap w >= rhs
        let c = TfConstants::new();
        let lap = |w: &dyn Fn(f64) -> f64, r: f64| -> f64 {
            let d = 1e-4 * r;
            (w(r + d) - 2.0 * w(r) + w(r - d)) / (d * d) + (w(r + d) - w(r - d)) / (d * r)
        };
        let mut r = 1.0;
        while r <= 100.0 {
            let up = |x: f64| sommerfeld_comparator(1.0, x, ComparatorKind::Upper).unwrap();
            let lo = |x: f64| sommerfeld_comparator(1.0, x, ComparatorKind::Lower).unwrap();
            let up_defect = lap(&up, r) - c.c_tf * up(r).powf(1.5);
            let lo_defect = lap(&lo, r) - c.c_tf * lo(r).powf(1.5);
            assert!(up_defect <= 1e-10 * up(r), "r={r}: {up_defect}");
            assert!(lo_defect >= -1e-10 * lo(r), "r={r}: {lo_defect}");
            r *= 1.6;
        }
    }
}
