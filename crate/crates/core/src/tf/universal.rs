//! The universal neutral Thomas-Fermi profile `chi`.
//!
//! `chi'' = chi^{3/2} x^{-1/2}` with `chi(0) = 1`, `chi(inf) = 0`. The
//! initial slope is found by bisection (shooting in the variable
//! `tau = sqrt(x)`, which removes the singular coefficient). Outward
//! integration is exponentially unstable past moderate `x` - the growing
//! perturbation behaves like `x^{(1+sqrt(73))/2}` - so the tail is produced
//! by integrating inward from the Sommerfeld end `chi ~ 144 x^{-3}`, with
//! the one-parameter manifold coordinate `kappa` matched at `x_match`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
#[allow(unused_imports)]
use crate::num::*;

/// Outcome of one outward shot.
enum Shot {
    /// chi crossed zero at finite x: slope too negative.
    CrossedZero,
    /// chi turned upward while positive: slope too shallow.
    TurnedUp,
    /// still tracking at the cap; slope indistinguishable from critical.
    Critical,
}

/// Tabulated universal profile with interpolating accessors.
#[derive(Debug, Clone)]
pub struct UniversalTf {
    /// log-uniform nodes x_i = x_lo * exp(i*h)
    x_lo: f64,
    h: f64,
    chi: Vec<f64>,
    /// d chi / dx at the nodes
    dchi: Vec<f64>,
    slope0: f64,
    kappa: f64,
    x_match: f64,
    x_hi: f64,
}

const X_LO: f64 = 1e-9;
const X_HI: f64 = 3e4;
const N_TABLE: usize = 8192;
const X_SERIES_END: f64 = 1e-3;
const X_MATCH: f64 = 10.0;
const ZETA: f64 = 0.772_001_872_658_765_5;

/// chi and chi' from the small-x series (Baker expansion, good to ~1e-13
/// at the hand-off point).
fn series(b: f64, x: f64) -> (f64, f64) {
    let s = x.sqrt();
    let chi = 1.0
        + b * x
        + (4.0 / 3.0) * x * s
        + 0.4 * b * x * x * s
        + x * x * x / 3.0
        + (3.0 / 70.0) * b * b * x * x * x * s
        + (2.0 / 15.0) * b * x * x * x * x;
    let dchi = b
        + 2.0 * s
        + b * x * s
        + x * x
        + (3.0 / 20.0) * b * b * x * x * s
        + (8.0 / 15.0) * b * x * x * x;
    (chi, dchi)
}

/// RK4 step for chi_tautau = chi_tau / tau + 4 tau chi^{3/2}.
#[inline]
fn rk4_tau(tau: f64, y: (f64, f64), dt: f64) -> (f64, f64) {
    let f = |t: f64, y: (f64, f64)| -> (f64, f64) {
        let chi = y.0.max(0.0);
        (y.1, y.1 / t + 4.0 * t * chi * chi.sqrt())
    };
    let k1 = f(tau, y);
    let k2 = f(tau + 0.5 * dt, (y.0 + 0.5 * dt * k1.0, y.1 + 0.5 * dt * k1.1));
    let k3 = f(tau + 0.5 * dt, (y.0 + 0.5 * dt * k2.0, y.1 + 0.5 * dt * k2.1));
    let k4 = f(tau + dt, (y.0 + dt * k3.0, y.1 + dt * k3.1));
    (
        y.0 + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        y.1 + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    )
}

/// RK4 step for chi_ss - chi_s = e^{3s/2} chi^{3/2} in s = ln x.
#[inline]
fn rk4_logx(s: f64, y: (f64, f64), ds: f64) -> (f64, f64) {
    let f = |s: f64, y: (f64, f64)| -> (f64, f64) {
        let chi = y.0.max(0.0);
        (y.1, y.1 + (1.5 * s).exp() * chi * chi.sqrt())
    };
    let k1 = f(s, y);
    let k2 = f(s + 0.5 * ds, (y.0 + 0.5 * ds * k1.0, y.1 + 0.5 * ds * k1.1));
    let k3 = f(s + 0.5 * ds, (y.0 + 0.5 * ds * k2.0, y.1 + 0.5 * ds * k2.1));
    let k4 = f(s + ds, (y.0 + ds * k3.0, y.1 + ds * k3.1));
    (
        y.0 + ds / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        y.1 + ds / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    )
}

fn shoot(b: f64, x_cap: f64) -> Shot {
    let tau0 = X_SERIES_END.sqrt();
    let (chi0, dchi0) = series(b, X_SERIES_END);
    let mut y = (chi0, 2.0 * tau0 * dchi0);
    let mut tau = tau0;
    let tau_cap = x_cap.sqrt();
    let dt: f64 = 1.0 / 4096.0;
    while tau < tau_cap {
        // keep the step well under the 1/tau coefficient scale
        let step = dt.min(tau / 64.0).min(tau_cap - tau);
        y = rk4_tau(tau, y, step);
        tau += step;
        if y.0 <= 0.0 {
            return Shot::CrossedZero;
        }
        if y.1 > 0.0 {
            return Shot::TurnedUp;
        }
    }
    Shot::Critical
}

impl UniversalTf {
    /// Solve the universal profile. `slope_tol` bounds the bisection width
    /// on the initial slope (the float lattice is the practical floor).
    pub fn solve(slope_tol: f64) -> Result<UniversalTf> {
        // --- shooting for the initial slope ---
        let mut lo = -1.65; // crosses zero
        let mut hi = -1.50; // turns up
        if !matches!(shoot(lo, 400.0), Shot::CrossedZero) {
            return Err(Error::SolverFailure {
                what: "universal profile shooting",
                detail: format!("lower bracket {lo} did not cross zero"),
                history: alloc::vec![lo, hi],
            });
        }
        if !matches!(shoot(hi, 400.0), Shot::TurnedUp) {
            return Err(Error::SolverFailure {
                what: "universal profile shooting",
                detail: format!("upper bracket {hi} did not turn upward"),
                history: alloc::vec![lo, hi],
            });
        }
        for _ in 0..200 {
            if hi - lo <= slope_tol.max(f64::EPSILON) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            match shoot(mid, 400.0) {
                Shot::CrossedZero => lo = mid,
                Shot::TurnedUp => hi = mid,
                Shot::Critical => break,
            }
        }
        let slope0 = 0.5 * (lo + hi);

        // --- table nodes ---
        let h = (X_HI / X_LO).ln() / (N_TABLE - 1) as f64;
        let xs: Vec<f64> = (0..N_TABLE).map(|i| X_LO * (i as f64 * h).exp()).collect();
        let mut chi = alloc::vec![0.0; N_TABLE];
        let mut dchi = alloc::vec![0.0; N_TABLE];

        // outward fill to x_match
        let i_match = xs.iter().position(|&x| x > X_MATCH).unwrap_or(N_TABLE) - 1;
        let mut tau = X_SERIES_END.sqrt();
        let (c0, d0) = series(slope0, X_SERIES_END);
        let mut y = (c0, 2.0 * tau * d0);
        for i in 0..=i_match {
            let x = xs[i];
            if x <= X_SERIES_END {
                let (c, d) = series(slope0, x);
                chi[i] = c;
                dchi[i] = d;
                continue;
            }
            let tau_target = x.sqrt();
            while tau < tau_target {
                let step = (1.0 / 4096.0f64).min(tau / 64.0).min(tau_target - tau);
                y = rk4_tau(tau, y, step);
                tau += step;
            }
            chi[i] = y.0;
            dchi[i] = y.1 / (2.0 * tau);
        }
        let chi_match = chi[i_match];
        let x_match = xs[i_match];

        // inward fill from the Sommerfeld end, matching the amplitude kappa.
        // Integrates node to node (4 RK substeps per interval) so recorded
        // values land exactly on table nodes.
        let xs_ref = &xs;
        let inward = |kappa: f64, mut record: Option<(&mut [f64], &mut [f64])>| -> f64 {
            let q = kappa * X_HI.powf(-ZETA);
            let chi_top = 144.0 * X_HI.powi(-3) * (1.0 + q);
            let dchi_ds_top = -144.0 * X_HI.powi(-3) * (3.0 + (3.0 + ZETA) * q);
            let mut y = (chi_top, dchi_ds_top);
            if let Some((c, d)) = record.as_mut() {
                c[N_TABLE - 1] = y.0;
                d[N_TABLE - 1] = y.1 / X_HI;
            }
            for idx in (i_match..N_TABLE - 1).rev() {
                let s_from = xs_ref[idx + 1].ln();
                let s_to = xs_ref[idx].ln();
                let ds = (s_to - s_from) / 4.0;
                let mut s = s_from;
                for _ in 0..4 {
                    y = rk4_logx(s, y, ds);
                    s += ds;
                }
                if idx > i_match {
                    if let Some((c, d)) = record.as_mut() {
                        c[idx] = y.0;
                        d[idx] = y.1 / xs_ref[idx];
                    }
                }
            }
            y.0 - chi_match
        };

        let mut k0 = -5.0;
        let mut k1 = -9.0;
        let mut g0 = inward(k0, None);
        let mut g1 = inward(k1, None);
        let mut kappa = k1;
        for _ in 0..60 {
            if (g1 - g0).abs() < 1e-300 {
                break;
            }
            let k2 = k1 - g1 * (k1 - k0) / (g1 - g0);
            k0 = k1;
            g0 = g1;
            k1 = k2;
            g1 = inward(k1, None);
            kappa = k1;
            if g1.abs() < 1e-13 {
                break;
            }
        }
        if g1.abs() > 1e-9 {
            return Err(Error::SolverFailure {
                what: "universal profile tail match",
                detail: format!("inward/outward mismatch {g1:e} at x = {x_match}"),
                history: alloc::vec![kappa, g1],
            });
        }
        {
            let (head, tail) = (&mut chi[..], &mut dchi[..]);
            inward(kappa, Some((head, tail)));
        }
        // the matched node keeps the outward value; stitch the overlap point
        chi[i_match] = chi_match;

        Ok(UniversalTf {
            x_lo: X_LO,
            h,
            chi,
            dchi,
            slope0,
            kappa,
            x_match,
            x_hi: X_HI,
        })
    }

    /// Initial slope `chi'(0)` (about -1.588071).
    pub fn initial_slope(&self) -> f64 {
        self.slope0
    }

    /// Tail amplitude in `chi ~ 144 x^{-3} (1 + kappa x^{-zeta})` at the far end.
    pub fn tail_amplitude(&self) -> f64 {
        self.kappa
    }

    pub fn x_match(&self) -> f64 {
        self.x_match
    }

    fn interp(&self, table: &[f64], x: f64) -> f64 {
        let t = (x / self.x_lo).ln() / self.h;
        let n = table.len();
        let i = (t as usize).min(n - 2);
        let s = i.saturating_sub(1).min(n - 4);
        let xi = t - s as f64;
        let mut acc = 0.0;
        for (k, fk) in table[s..s + 4].iter().enumerate() {
            let mut l = 1.0;
            for m in 0..4 {
                if m != k {
                    l *= (xi - m as f64) / (k as f64 - m as f64);
                }
            }
            acc += l * fk;
        }
        acc
    }

    /// chi(x) for any x > 0.
    pub fn chi(&self, x: f64) -> f64 {
        if x <= X_SERIES_END {
            series(self.slope0, x).0
        } else if x >= self.x_hi {
            144.0 * x.powi(-3) * (1.0 + self.kappa * x.powf(-ZETA))
        } else {
            self.interp(&self.chi, x)
        }
    }

    /// d chi / dx.
    pub fn chi_prime(&self, x: f64) -> f64 {
        if x <= X_SERIES_END {
            series(self.slope0, x).1
        } else if x >= self.x_hi {
            -144.0 * x.powi(-4) * (3.0 + (3.0 + ZETA) * self.kappa * x.powf(-ZETA))
        } else {
            self.interp(&self.dchi, x)
        }
    }

    /// Fraction of the electrons outside scaled radius `x`:
    /// `nu/Z = chi(x) - x chi'(x)`.
    pub fn exterior_fraction(&self, x: f64) -> f64 {
        (self.chi(x) - x * self.chi_prime(x)).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile() -> UniversalTf {
        UniversalTf::solve(1e-12).unwrap()
    }

    #[test]
    fn initial_slope_matches_reference() {
        let u = profile();
        // classic value of -chi'(0)
        assert!(
            (u.initial_slope() + 1.588_071_022_6).abs() < 1e-8,
            "slope {}",
            u.initial_slope()
        );
    }

    #[test]
    fn integrated_ode_residual_is_small() {
        // chi'(x2) - chi'(x1) must equal the integral of chi^{3/2} x^{-1/2};
        // integrating smooths interpolation noise instead of amplifying it.
        let u = profile();
        for &(x1, x2) in &[
            (0.01, 0.02),
            (0.5, 1.0),
            (5.0, 8.0),
            (8.0, 15.0),
            (30.0, 50.0),
            (500.0, 900.0),
        ] {
            let m = 4000;
            let dx = (x2 - x1) / m as f64;
            let mut integral = 0.0;
            for j in 0..m {
                let a = x1 + j as f64 * dx;
                let mid = a + 0.5 * dx;
                let b = a + dx;
                let f = |x: f64| u.chi(x).max(0.0).powf(1.5) / x.sqrt();
                integral += dx / 6.0 * (f(a) + 4.0 * f(mid) + f(b));
            }
            let jump = u.chi_prime(x2) - u.chi_prime(x1);
            assert!(
                (jump - integral).abs() < 1e-7 * integral.abs().max(1e-10),
                "[{x1},{x2}]: jump {jump} vs integral {integral}"
            );
        }
    }

    #[test]
    fn known_table_values() {
        let u = profile();
        // Sommerfeld-era reference values of the universal function
        assert!((u.chi(1.0) - 0.4240).abs() < 5e-4, "chi(1) = {}", u.chi(1.0));
        assert!((u.chi(10.0) - 0.02431).abs() < 5e-5, "chi(10) = {}", u.chi(10.0));
    }

    #[test]
    fn tail_joins_smoothly_at_the_match_point() {
        let u = profile();
        let xm = u.x_match();
        let d = 1e-3 * xm;
        let fd = (u.chi(xm + d) - u.chi(xm - d)) / (2.0 * d);
        let stored = u.chi_prime(xm);
        assert!(
            ((fd - stored) / stored).abs() < 1e-4,
            "derivative across match: fd {fd} vs stored {stored}"
        );
    }

    #[test]
    fn exterior_fraction_decreases_to_zero() {
        let u = profile();
        let mut prev = 1.0 + 1e-12; // chi - x chi' -> 1 as x -> 0
        for &x in &[0.01, 0.1, 1.0, 10.0, 100.0, 1000.0] {
            let f = u.exterior_fraction(x);
            assert!(f < prev, "not decreasing at x={x}");
            assert!(f > 0.0);
            prev = f;
        }
        assert!(u.exterior_fraction(2e4) < 1e-10);
    }
}
