//! Logarithmic radial grids and quadrature.
//!
//! All fields live on a grid `r_i = r_min * exp(i*h)`. Integrals over
//! `[r_min, r_max]` use an endpoint-corrected trapezoid rule in the log
//! variable (Gregory weights, sixth order), so `int f(r) dr` becomes a
//! plain dot product with [`RadialGrid::weights`]. Running integrals use a
//! local-cubic rule, fourth order, which is what the Newton-potential and
//! screening-function sweeps are built on.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
#[allow(unused_imports)]
use crate::num::*;

/// Gregory endpoint corrections for the sixth-order rule.
const GREGORY6: [f64; 5] = [
    95.0 / 288.0,
    317.0 / 240.0,
    23.0 / 30.0,
    793.0 / 720.0,
    157.0 / 160.0,
];

/// Strictly increasing sample radii with quadrature weights for
/// `int_{r_min}^{r_max} f(r) dr`, all in bohr.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    points: Vec<f64>,
    weights: Vec<f64>,
    r_min: f64,
    r_max: f64,
    /// Log step `h = ln(r_max/r_min)/(n-1)`.
    step: f64,
}

impl RadialGrid {
    /// Build a logarithmic grid with `n` points on `[r_min, r_max]`.
    pub fn log(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !(r_min.is_finite() && r_max.is_finite()) || r_min <= 0.0 || r_max <= r_min {
            return Err(Error::invalid("grid endpoints must satisfy 0 < r_min < r_max"));
        }
        if n < 16 {
            return Err(Error::invalid("grid needs at least 16 points"));
        }
        let h = (r_max / r_min).ln() / (n - 1) as f64;
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            points.push(r_min * (i as f64 * h).exp());
        }
        points[n - 1] = r_max;

        let mut weights = Vec::with_capacity(n);
        for (i, &r) in points.iter().enumerate() {
            let c = if i < 5 {
                GREGORY6[i]
            } else if i >= n - 5 {
                GREGORY6[n - 1 - i]
            } else {
                1.0
            };
            weights.push(h * c * r);
        }
        Ok(RadialGrid {
            points,
            weights,
            r_min,
            r_max,
            step: h,
        })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn r(&self, i: usize) -> f64 {
        self.points[i]
    }

    /// `int_{r_min}^{r_max} f(r) dr` for samples `f` on this grid.
    pub fn integrate_dr(&self, f: &[f64]) -> f64 {
        debug_assert_eq!(f.len(), self.n());
        let mut acc = 0.0;
        for (w, v) in self.weights.iter().zip(f) {
            acc += w * v;
        }
        acc
    }

    /// Running integral `P_i = int_{r_min}^{r_i} f(r) dr`, fourth order.
    ///
    /// Uses the local-cubic rule in the log variable, so `P` is smooth
    /// enough to interpolate for off-grid upper limits.
    pub fn cumulative_dr(&self, f: &[f64]) -> Vec<f64> {
        debug_assert_eq!(f.len(), self.n());
        let n = self.n();
        let h = self.step;
        // integrand in t = ln r: g = f * r
        let g: Vec<f64> = f.iter().zip(&self.points).map(|(v, r)| v * r).collect();
        let mut p = vec![0.0; n];
        p[1] = p[0] + h * (9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]) / 24.0;
        for j in 1..n - 2 {
            p[j + 1] = p[j] + h * (-g[j - 1] + 13.0 * g[j] + 13.0 * g[j + 1] - g[j + 2]) / 24.0;
        }
        p[n - 1] = p[n - 2] + h * (9.0 * g[n - 1] + 19.0 * g[n - 2] - 5.0 * g[n - 3] + g[n - 4]) / 24.0;
        p
    }

    /// `df/dr` by fourth-order differences in the log variable.
    pub fn derivative_dr(&self, f: &[f64]) -> Vec<f64> {
        debug_assert_eq!(f.len(), self.n());
        let n = self.n();
        let h = self.step;
        let mut d = vec![0.0; n];
        d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
        d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
        for i in 2..n - 2 {
            d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
        }
        d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5])
            / (12.0 * h);
        d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
            + 3.0 * f[n - 5])
            / (12.0 * h);
        for i in 0..n {
            d[i] /= self.points[i];
        }
        d
    }

    /// Largest index `i` with `r_i <= r` (clamped to `[0, n-2]`).
    pub fn index_below(&self, r: f64) -> usize {
        if r <= self.r_min {
            return 0;
        }
        let i = ((r / self.r_min).ln() / self.step) as usize;
        i.min(self.n() - 2)
    }

    /// Cubic (4-point Lagrange) interpolation of samples `f` at radius `r`,
    /// clamped to the grid range.
    pub fn interp(&self, f: &[f64], r: f64) -> f64 {
        debug_assert_eq!(f.len(), self.n());
        let n = self.n();
        if r <= self.r_min {
            return f[0];
        }
        if r >= self.r_max {
            return f[n - 1];
        }
        let t = (r / self.r_min).ln() / self.step;
        let i = (t as usize).min(n - 2);
        // stencil start, clamped so [s, s+3] stays in range
        let s = i.saturating_sub(1).min(n - 4);
        let x = t - s as f64;
        let mut acc = 0.0;
        for (k, fk) in f[s..s + 4].iter().enumerate() {
            let mut l = 1.0;
            for m in 0..4 {
                if m != k {
                    l *= (x - m as f64) / (k as f64 - m as f64);
                }
            }
            acc += l * fk;
        }
        acc
    }

    /// Interpolate a nondecreasing profile (e.g. a running integral) with a
    /// monotone cubic Hermite so the result cannot overshoot between nodes.
    pub fn interp_monotone(&self, f: &[f64], r: f64) -> f64 {
        debug_assert_eq!(f.len(), self.n());
        let n = self.n();
        if r <= self.r_min {
            return f[0];
        }
        if r >= self.r_max {
            return f[n - 1];
        }
        let t = (r / self.r_min).ln() / self.step;
        let i = (t as usize).min(n - 2);
        let x = t - i as f64;
        let d = |j: usize| f[j + 1] - f[j]; // secant slopes, unit spacing in t
        let slope = |j: usize| -> f64 {
            if j == 0 {
                d(0)
            } else if j == n - 1 {
                d(n - 2)
            } else {
                let (a, b) = (d(j - 1), d(j));
                if a * b <= 0.0 {
                    0.0
                } else {
                    // Fritsch-Carlson harmonic mean keeps the interpolant monotone
                    2.0 * a * b / (a + b)
                }
            }
        };
        let (f0, f1) = (f[i], f[i + 1]);
        let (m0, m1) = (slope(i), slope(i + 1));
        let x2 = x * x;
        let x3 = x2 * x;
        (2.0 * x3 - 3.0 * x2 + 1.0) * f0
            + (x3 - 2.0 * x2 + x) * m0
            + (-2.0 * x3 + 3.0 * x2) * f1
            + (x3 - x2) * m1
    }
}

/// Grid and solver tolerances, surfaced in one place.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericsSettings {
    /// Grid size.
    pub grid_n: usize,
    /// `r_min = r_min_scale / Z`.
    pub r_min_scale: f64,
    /// `r_max = max(r_max_floor, r_max_nu_coeff * N^(1/3))`.
    pub r_max_floor: f64,
    pub r_max_nu_coeff: f64,
    /// Quadrature self-check tolerance (constant-1 integration).
    pub quad_rel_tol: f64,
    /// Thomas-Fermi equation residual target.
    pub tf_equation_tol: f64,
    /// Bisection tolerance on the universal initial slope.
    pub tf_shoot_tol: f64,
    /// Electron charge allowed to sit beyond `r_max` in a neutral
    /// Thomas-Fermi solve, relative to Z; sets the grid extension.
    pub tf_tail_charge_rel: f64,
    /// Eigenvalues with `|e| < box_sensitivity_coeff / r_max^2` are flagged
    /// as shifted by the Dirichlet wall.
    pub box_sensitivity_coeff: f64,
}

impl Default for NumericsSettings {
    fn default() -> Self {
        NumericsSettings {
            grid_n: 4000,
            r_min_scale: 1e-6,
            r_max_floor: 60.0,
            r_max_nu_coeff: 12.0,
            quad_rel_tol: 1e-10,
            tf_equation_tol: 1e-6,
            tf_shoot_tol: 1e-12,
            tf_tail_charge_rel: 5e-7,
            box_sensitivity_coeff: 5.0,
        }
    }
}

impl NumericsSettings {
    /// Standard grid for an atom with nuclear charge `z` and `n_electrons`.
    pub fn grid_for(&self, z: f64, n_electrons: f64) -> Result<RadialGrid> {
        let r_min = self.r_min_scale / z.max(1.0);
        let r_max = self
            .r_max_floor
            .max(self.r_max_nu_coeff * n_electrons.max(1.0).cbrt());
        RadialGrid::log(r_min, r_max, self.grid_n)
    }

    /// Box-sensitivity threshold for eigenvalues on `grid`.
    pub fn box_threshold(&self, grid: &RadialGrid) -> f64 {
        self.box_sensitivity_coeff / (grid.r_max() * grid.r_max())
    }
}

/// Reject non-finite samples up front; used by the integral operators.
pub(crate) fn ensure_finite(values: &[f64], what: &str) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid(alloc::format!("{what} contains non-finite samples")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> RadialGrid {
        RadialGrid::log(1e-6, 60.0, 4000).unwrap()
    }

    #[test]
    fn constant_integrates_to_range_length() {
        let g = grid();
        let ones = vec![1.0; g.n()];
        let got = g.integrate_dr(&ones);
        let want = g.r_max() - g.r_min();
        assert!(
            ((got - want) / want).abs() < 1e-10,
            "relative error {:e}",
            ((got - want) / want).abs()
        );
    }

    #[test]
    fn monomials_integrate_exactly() {
        let g = grid();
        for k in 0..=3u32 {
            let f: Vec<f64> = g.points().iter().map(|r| r.powi(k as i32)).collect();
            let got = g.integrate_dr(&f);
            let p = k as f64 + 1.0;
            let want = (g.r_max().powf(p) - g.r_min().powf(p)) / p;
            assert!(
                ((got - want) / want).abs() < 1e-9,
                "r^{k}: relative error {:e}",
                ((got - want) / want).abs()
            );
        }
    }

    #[test]
    fn cumulative_matches_closed_form() {
        let g = grid();
        let f: Vec<f64> = g.points().iter().map(|r| (-r).exp()).collect();
        let p = g.cumulative_dr(&f);
        for &i in &[1usize, 57, 800, 2000, 3999] {
            let want = (-g.r_min()).exp() - (-g.r(i)).exp();
            assert!(
                (p[i] - want).abs() < 1e-10,
                "i={i}: {} vs {}",
                p[i],
                want
            );
        }
    }

    #[test]
    fn derivative_fourth_order() {
        let g = grid();
        let f: Vec<f64> = g.points().iter().map(|r| (-2.0 * r).exp()).collect();
        let d = g.derivative_dr(&f);
        for &i in &[0usize, 1, 500, 2000, 3998, 3999] {
            let want = -2.0 * (-2.0 * g.r(i)).exp();
            assert!(
                (d[i] - want).abs() < 1e-7 * (1.0 + want.abs()),
                "i={i}: {} vs {}",
                d[i],
                want
            );
        }
    }

    #[test]
    fn interp_reproduces_smooth_function() {
        let g = grid();
        let f: Vec<f64> = g.points().iter().map(|r| 1.0 / (1.0 + r * r)).collect();
        for &r in &[2.5e-6, 0.034, 1.2345, 17.0, 59.9] {
            let got = g.interp(&f, r);
            let want = 1.0 / (1.0 + r * r);
            assert!((got - want).abs() < 1e-10, "r={r}: {got} vs {want}");
        }
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(RadialGrid::log(0.0, 1.0, 100).is_err());
        assert!(RadialGrid::log(1.0, 0.5, 100).is_err());
        assert!(RadialGrid::log(1e-6, 60.0, 4).is_err());
    }
}
