//! Radial convolution with the squared Dirichlet-ball ground state.
//!
//! The kernel is `g(x) = (2 pi s)^{-1/2} |x|^{-1} sin(pi |x|/s)` on
//! `|x| <= s`, zero outside, normalized so `int g^2 = 1` and
//! `int |grad g|^2 = (pi/s)^2`. For radial `f` the convolution reduces to
//!
//! `(f * g^2)(r) = (2 pi / r) int t f(t) [ K(min(r+t, s)) - K(min(|r-t|, s)) ] dt`
//!
//! with `K(u) = int_0^u v g^2(v) dv`, which this module evaluates panel by
//! panel with Gauss-Legendre nodes so the kernel kinks at `t = r`, `r +- s`
//! and `s - r` never sit inside a quadrature panel.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
#[allow(unused_imports)]
use crate::num::*;
use crate::radial::RadialFunction;

/// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the
/// rule is symmetric).
const GL16_X: [f64; 8] = [
    0.09501250983763744,
    0.2816035507792589,
    0.45801677765722737,
    0.6178762444026438,
    0.7554044083550030,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL16_W: [f64; 8] = [
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

/// Cumulative kernel moment `K(u) = int_0^u v g^2(v) dv`, tabulated once
/// per smear call on a uniform grid over `[0, s]`.
struct KernelTable {
    s: f64,
    du: f64,
    k: Vec<f64>,
}

impl KernelTable {
    fn build(s: f64, m: usize) -> KernelTable {
        // integrand v*g^2(v) = sin^2(pi v / s) / (2 pi s v); finite at 0
        let q = |v: f64| -> f64 {
            if v <= 0.0 {
                0.0
            } else {
                let x = PI * v / s;
                x.sin().powi(2) / (2.0 * PI * s * v)
            }
        };
        let du = s / m as f64;
        let mut k = Vec::with_capacity(m + 1);
        k.push(0.0);
        // composite Simpson per cell with the midpoint
        let mut acc = 0.0;
        for j in 0..m {
            let a = j as f64 * du;
            let b = a + du;
            acc += du / 6.0 * (q(a) + 4.0 * q(0.5 * (a + b)) + q(b));
            k.push(acc);
        }
        KernelTable { s, du, k }
    }

    fn at(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= self.s {
            return self.k[self.k.len() - 1];
        }
        let x = u / self.du;
        let m = self.k.len() - 1;
        let i = (x as usize).min(m - 1);
        let s = i.saturating_sub(1).min(m - 3);
        let xi = x - s as f64;
        let mut acc = 0.0;
        for (k, fk) in self.k[s..s + 4].iter().enumerate() {
            let mut l = 1.0;
            for j in 0..4 {
                if j != k {
                    l *= (xi - j as f64) / (k as f64 - j as f64);
                }
            }
            acc += l * fk;
        }
        acc
    }
}

/// Convolve `f` with `g^2`. Mass is preserved (`int g^2 = 1`).
pub fn smear_g2(f: &RadialFunction, s: f64) -> Result<RadialFunction> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain("smearing width must be positive"));
    }
    let g = f.grid();
    // Resolution: flag radii where the grid offers fewer than 4 points per
    // kernel width AND the field varies by more than 25% across the
    // window. Slowly varying tails are integrated panel-exactly, so only
    // the combination aliases the result. The outer edge zone is excluded
    // (output there inherits the domain truncation regardless).
    let fmax = f.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if fmax > 0.0 {
        let h = g.step();
        let r_edge = 0.8 * g.r_max();
        for (i, &v) in f.values().iter().enumerate() {
            let r = g.r(i);
            if v.abs() > 1e-12 * fmax && r <= r_edge {
                let dr = r * h;
                let have = s / dr;
                if have < 4.0 {
                    let lo = f.at((r - s).max(g.r_min()));
                    let hi = f.at((r + s).min(g.r_max()));
                    let span = (hi - lo).abs().max((v - lo).abs()).max((hi - v).abs());
                    if span > 0.25 * v.abs().max(1e-12 * fmax) {
                        return Err(Error::Resolution {
                            width: s,
                            at: r,
                            needed: 4.0,
                            have,
                        });
                    }
                }
            }
        }
    }

    let table = KernelTable::build(s, 4096);
    let values = f.values();
    let interp_f = |t: f64| -> f64 {
        if t < g.r_min() || t > g.r_max() {
            0.0
        } else {
            g.interp(values, t)
        }
    };

    let out: Vec<f64> = g
        .points()
        .iter()
        .map(|&r| {
            // integration window in t where the bracket is nonzero
            let lo = (r - s).max(0.0);
            let hi = r + s;
            // kernel kinks: |r-t| = 0 at t = r, |r-t| = s at the window
            // edges, r+t = s at t = s-r (inside the window only when r < s)
            let mut edges: Vec<f64> = alloc::vec![lo, hi, r];
            if r < s {
                edges.push(s - r);
            }
            edges.retain(|&e| (lo..=hi).contains(&e));
            edges.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
            let mut acc = 0.0;
            for w in edges.windows(2) {
                let (a, b) = (w[0], w[1]);
                if b - a <= 0.0 {
                    continue;
                }
                let c = 0.5 * (a + b);
                let hw = 0.5 * (b - a);
                for k in 0..8 {
                    for sign in [-1.0, 1.0] {
                        let t = c + sign * hw * GL16_X[k];
                        let bracket =
                            table.at((r + t).min(s)) - table.at((r - t).abs().min(s));
                        acc += hw * GL16_W[k] * t * interp_f(t) * bracket;
                    }
                }
            }
            2.0 * PI / r * acc
        })
        .collect();

    RadialFunction::new(g.clone(), out, f.meaning())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electrostatics::integrate3d;
    use crate::radial::Meaning;
    use crate::grid::RadialGrid;
    use alloc::sync::Arc;

    fn grid() -> Arc<RadialGrid> {
        Arc::new(RadialGrid::log(1e-6, 60.0, 4000).unwrap())
    }

    #[test]
    fn constant_is_fixed_point_in_the_interior() {
        let g = grid();
        let f = RadialFunction::from_fn(g, Meaning::Generic, |_| 3.0).unwrap();
        let out = smear_g2(&f, 0.5).unwrap();
        // away from r_max the unit-mass kernel reproduces the constant
        for &r in &[0.7, 2.0, 20.0] {
            assert!((out.at(r) - 3.0).abs() < 1e-6, "r={r}: {}", out.at(r));
        }
    }

    #[test]
    fn coulomb_tail_is_exact_outside_the_kernel() {
        let g = grid();
        let f = RadialFunction::from_fn(g.clone(), Meaning::Potential, |r| 1.0 / r).unwrap();
        let s = 0.4;
        let out = smear_g2(&f, s).unwrap();
        for &r in &[0.5, 1.0, 5.0, 30.0] {
            let got = out.at(r);
            assert!((got - 1.0 / r).abs() < 2e-7 / r, "r={r}: {got}");
        }
        // and never exceeds 1/r anywhere (superharmonicity)
        for (i, &v) in out.values().iter().enumerate() {
            let r = out.grid().r(i);
            if r > 2e-4 {
                assert!(v <= 1.0 / r + 2e-7 / r, "r={r}");
            }
        }
    }

    #[test]
    fn mass_is_preserved() {
        let g = grid();
        let rho = RadialFunction::from_fn(g, Meaning::Density, |r| {
            (-2.0 * r).exp() / core::f64::consts::PI
        })
        .unwrap();
        let out = smear_g2(&rho, 0.3).unwrap();
        let m0 = integrate3d(&rho).unwrap();
        let m1 = integrate3d(&out).unwrap();
        assert!(((m1 - m0) / m0).abs() < 1e-6, "{m0} -> {m1}");
    }

    #[test]
    fn under_resolved_width_is_an_error() {
        let g = grid();
        // a density living at large radii, where the log grid is coarse
        let rho = RadialFunction::from_fn(g, Meaning::Density, |r| {
            (-(r - 40.0) * (r - 40.0)).exp()
        })
        .unwrap();
        match smear_g2(&rho, 0.05) {
            Err(Error::Resolution { .. }) => {}
            other => panic!("expected resolution error, got {other:?}"),
        }
    }
}
