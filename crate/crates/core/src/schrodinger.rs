//! Radial bound states of `h = -1/2 lap - V` per angular channel.
//!
//! Each channel solves `-1/2 u'' + [l(l+1)/(2r^2) - V(r)] u = e u` with
//! Dirichlet walls at the grid ends. The Liouville substitution
//! `u(r) = sqrt(r) w(ln r)` turns this into `w'' = Q w` on the uniform log
//! grid with `Q = (l + 1/2)^2 - 2 r^2 (V + e)`, integrated by Numerov.
//! Eigenvalues are located by node-count bisection (the count of sign
//! changes of the outward sweep equals the number of eigenvalues below
//! `e`), with the sweep truncated once the solution has grown by forty
//! e-folds past the outer turning point so the recurrence never leaves its
//! stability region. Orbitals come from a matched outward/inward pass.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::electrostatics::lp_power_integral;
use crate::error::{Error, Result};
use crate::grid::{NumericsSettings, RadialGrid};
#[allow(unused_imports)]
use crate::num::*;
use crate::radial::{Meaning, RadialFunction};
use crate::report::{BoundReport, Sample};

/// Eigenvalue-counting constant: `N(e <= 0) <= L0 int [V]_+^{3/2}`.
pub fn clr_constant() -> f64 {
    2.0f64.powf(1.5) * 0.1156
}

/// Printed eigenvalue-sum constant of the kinetic/potential dual pair.
pub const K1_PRINTED: f64 = 20.49;

/// Eigenvalue-sum constant: `sum e_j >= -L1 int [V]_+^{5/2}`, with
/// `L1 = (2/5) (3/(5 K1))^{2/3} = 0.038`.
pub fn lt_sum_constant() -> f64 {
    0.4 * (3.0 / (5.0 * K1_PRINTED)).powf(2.0 / 3.0)
}

/// Kinetic-energy bound constant for spin-paired density matrices,
/// obtained from the eigenvalue-sum constant by duality with the spin
/// factor 2: `Tr[-1/2 lap g] >= (3/5) (1/(5 L1))^{2/3} int rho^{5/3}`.
///
/// The printed companion value `K1 = 20.49` reproduces `L1 = 0.038`
/// through the printed relation but lies above the semiclassical ceiling
/// for a kinetic constant, so the asserted kinetic bound uses this
/// duality-consistent value (about 1.816) instead.
pub fn kinetic_bound_constant_spin2() -> f64 {
    0.6 * (1.0 / (5.0 * lt_sum_constant())).powf(2.0 / 3.0)
}

/// Bound states of one angular channel.
#[derive(Debug, Clone)]
pub struct ChannelSpectrum {
    pub l: u32,
    /// Strictly increasing eigenvalues below the search ceiling.
    pub eigenvalues: Vec<f64>,
    /// Normalized radial orbitals `u` (`int u^2 dr = 1`), one per eigenvalue.
    pub orbitals: Vec<RadialFunction>,
    /// True when fewer states than requested exist in the box.
    pub truncated: bool,
    /// Per-state flag: `|e|` below the Dirichlet-wall sensitivity threshold.
    pub box_sensitive: Vec<bool>,
}

/// Channel workspace holding `2 r^2 V` and the centrifugal constant.
struct Channel<'a> {
    grid: &'a RadialGrid,
    two_r2_v: Vec<f64>,
    two_r2: Vec<f64>,
    lh2: f64,
}

impl<'a> Channel<'a> {
    fn new(v: &'a RadialFunction, l: u32) -> Channel<'a> {
        let grid = v.grid();
        let two_r2_v: Vec<f64> = grid
            .points()
            .iter()
            .zip(v.values())
            .map(|(&r, &vv)| 2.0 * r * r * vv)
            .collect();
        let two_r2: Vec<f64> = grid.points().iter().map(|&r| 2.0 * r * r).collect();
        let lh = l as f64 + 0.5;
        Channel {
            grid,
            two_r2_v,
            two_r2,
            lh2: lh * lh,
        }
    }

    #[inline]
    fn q(&self, i: usize, e: f64) -> f64 {
        self.lh2 - self.two_r2_v[i] - self.two_r2[i] * e
    }

    /// Index past which the forbidden-region solution has grown by 40
    /// e-folds; integrating further adds nothing and can destabilize the
    /// recurrence for deep states. `None` when the whole grid is
    /// classically forbidden (no oscillation, no bound state at `e`).
    fn stop_index(&self, e: f64) -> Option<usize> {
        let n = self.grid.n();
        let h = self.grid.step();
        let mut turn = None;
        for i in (0..n).rev() {
            if self.q(i, e) <= 0.0 {
                turn = Some(i);
                break;
            }
        }
        let turn = turn?;
        let mut phase = 0.0;
        for i in turn + 1..n {
            phase += self.q(i, e).max(0.0).sqrt() * h;
            if phase > 40.0 {
                return Some(i);
            }
        }
        Some(n - 1)
    }

    /// Leading small-r ratio `w_1/w_0` from the regular solution
    /// `u ~ r^{l+1}`, i.e. `w ~ r^{l+1/2}` on the log grid. Starting the
    /// sweep this way (rather than with a hard wall at `r_min`) removes the
    /// `u'(0)^2 r_min` eigenvalue shift of a Dirichlet cutoff.
    fn start_ratio(&self) -> f64 {
        ((self.lh2.sqrt()) * self.grid.step()).exp()
    }

    /// Count sign changes of the outward Numerov sweep; equals the number
    /// of eigenvalues below `e`.
    fn node_count(&self, e: f64) -> usize {
        let Some(stop) = self.stop_index(e) else {
            return 0;
        };
        let h2 = self.grid.step() * self.grid.step();
        let c = |i: usize| 1.0 - h2 / 12.0 * self.q(i, e);
        let mut w_prev = 1e-250;
        let mut w = 1e-250 * self.start_ratio();
        let mut nodes = 0;
        for i in 1..stop {
            let w_next =
                ((12.0 - 10.0 * c(i)) * w - c(i - 1) * w_prev) / c(i + 1);
            if w_next != 0.0 && w.signum() != w_next.signum() && w != 0.0 {
                nodes += 1;
            }
            w_prev = w;
            w = w_next;
            if w.abs() > 1e250 {
                w_prev /= 1e250;
                w /= 1e250;
            }
        }
        nodes
    }

    /// Matched two-sided eigenfunction at energy `e`; returns `w` samples.
    fn eigenfunction(&self, e: f64) -> Vec<f64> {
        let n = self.grid.n();
        let stop = self.stop_index(e).unwrap_or(n - 1).max(8).min(n - 1);
        let h2 = self.grid.step() * self.grid.step();
        let c = |i: usize| 1.0 - h2 / 12.0 * self.q(i, e);
        // match at the outermost turning point (fallback: 3/4 of the sweep)
        let mut m = (3 * stop) / 4;
        for i in (1..stop).rev() {
            if self.q(i, e) <= 0.0 {
                m = i;
                break;
            }
        }
        m = m.clamp(2, stop - 3);

        let mut w = vec![0.0; n];
        // outward, regular start
        let mut out = vec![0.0; m + 2];
        out[0] = 1e-150;
        out[1] = 1e-150 * self.start_ratio();
        for i in 1..=m {
            out[i + 1] = ((12.0 - 10.0 * c(i)) * out[i] - c(i - 1) * out[i - 1]) / c(i + 1);
            if out[i + 1].abs() > 1e200 {
                for x in out[..=i + 1].iter_mut() {
                    *x *= 1e-200;
                }
            }
        }
        // inward, from the truncation wall
        let mut inw = vec![0.0; n];
        inw[stop - 1] = 1e-150;
        for i in (m..stop - 1).rev() {
            inw[i] = ((12.0 - 10.0 * c(i + 1)) * inw[i + 1] - c(i + 2) * inw[i + 2]) / c(i);
            if inw[i].abs() > 1e200 {
                for x in inw[i..].iter_mut() {
                    *x *= 1e-200;
                }
            }
        }
        let scale = if inw[m].abs() > 0.0 { out[m] / inw[m] } else { 0.0 };
        for (i, x) in w.iter_mut().enumerate() {
            *x = if i <= m {
                out[i]
            } else if i < stop {
                inw[i] * scale
            } else {
                0.0
            };
        }
        w
    }

    /// One generalized-Cooley energy correction from the matching defect.
    fn cooley_correction(&self, e: f64, w: &[f64]) -> f64 {
        let n = self.grid.n();
        let h2 = self.grid.step() * self.grid.step();
        // locate the match index again (outermost turning point)
        let Some(stop) = self.stop_index(e) else {
            return 0.0;
        };
        let mut m = (3 * stop) / 4;
        for i in (1..stop).rev() {
            if self.q(i, e) <= 0.0 {
                m = i;
                break;
            }
        }
        m = m.clamp(2, n - 3);
        let y = |i: usize| (1.0 - h2 / 12.0 * self.q(i, e)) * w[i];
        let defect = y(m + 1) - 2.0 * y(m) + y(m - 1) - h2 * self.q(m, e) * w[m];
        let mut denom = 0.0;
        for i in 0..n {
            denom += self.two_r2[i] * w[i] * w[i];
        }
        if denom == 0.0 {
            return 0.0;
        }
        defect * w[m] / (h2 * denom)
    }
}

/// Lowest `count` Dirichlet eigenpairs of the channel.
pub fn solve_channel(v: &RadialFunction, l: u32, count: usize) -> Result<ChannelSpectrum> {
    solve_channel_below(v, l, count, 0.0)
}

/// Same, restricted to eigenvalues below `e_max`.
pub fn solve_channel_below(
    v: &RadialFunction,
    l: u32,
    count: usize,
    e_max: f64,
) -> Result<ChannelSpectrum> {
    if count == 0 {
        return Err(Error::invalid("requested zero eigenpairs"));
    }
    crate::grid::ensure_finite(v.values(), "potential")?;
    let ch = Channel::new(v, l);
    let grid = v.grid();
    let available = ch.node_count(e_max);
    let m = count.min(available);
    let truncated = m < count;

    let v_top = v.values().iter().fold(0.0f64, |a, &b| a.max(b));
    let e_floor = -(v_top + 1.0);

    let mut eigenvalues = Vec::with_capacity(m);
    let mut orbitals = Vec::with_capacity(m);
    let mut lo_prev = e_floor;
    for k in 1..=m {
        // bisect on node_count >= k
        let mut lo = lo_prev; // nodes < k here
        let mut hi = e_max; // nodes >= k here
        for _ in 0..240 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if ch.node_count(mid) >= k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-15 * hi.abs().max(lo.abs()).max(1e-12) {
                break;
            }
        }
        let mut e = 0.5 * (lo + hi);
        let w = ch.eigenfunction(e);
        let de = ch.cooley_correction(e, &w);
        if de.is_finite() && de.abs() <= 1e-7 * e.abs().max(1e-6) {
            e += de;
        }
        let w = ch.eigenfunction(e);
        // u = sqrt(r) w, normalized to int u^2 dr = 1
        let u_raw: Vec<f64> = grid
            .points()
            .iter()
            .zip(&w)
            .map(|(&r, &ww)| r.sqrt() * ww)
            .collect();
        let u2: Vec<f64> = u_raw.iter().map(|x| x * x).collect();
        let norm = grid.integrate_dr(&u2).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::SolverFailure {
                what: "channel eigenfunction",
                detail: alloc::format!("degenerate norm for l={l} k={k}"),
                history: vec![e],
            });
        }
        // sign convention: positive near the origin
        let lead = u_raw
            .iter()
            .find(|x| x.abs() > 0.0)
            .copied()
            .unwrap_or(1.0);
        let s = if lead < 0.0 { -1.0 } else { 1.0 };
        let u: Vec<f64> = u_raw.iter().map(|x| s * x / norm).collect();
        orbitals.push(RadialFunction::new(grid.clone(), u, Meaning::Orbital)?);
        eigenvalues.push(e);
        lo_prev = e;
    }

    let settings = NumericsSettings::default();
    let thr = settings.box_threshold(grid);
    let box_sensitive = eigenvalues.iter().map(|e| e.abs() < thr).collect();
    Ok(ChannelSpectrum {
        l,
        eigenvalues,
        orbitals,
        truncated,
        box_sensitive,
    })
}

/// Count the negative eigenvalues of one channel without solving them.
pub fn channel_bound_count(v: &RadialFunction, l: u32) -> usize {
    Channel::new(v, l).node_count(0.0)
}

/// All negative 3-d eigenvalues `(e, degeneracy 2l+1)`, channels
/// `0..=l_max`. Errors if channel `l_max` still binds: silent truncation of
/// the spectrum is never allowed.
pub fn negative_spectrum_3d(v: &RadialFunction, l_max: u32) -> Result<Vec<(f64, u32, bool)>> {
    let top = channel_bound_count(v, l_max);
    if top > 0 {
        return Err(Error::LMaxTooSmall {
            l_max,
            still_bound: top,
        });
    }
    let mut out = Vec::new();
    for l in 0..l_max {
        let count = channel_bound_count(v, l);
        if count == 0 {
            continue;
        }
        let spec = solve_channel_below(v, l, count, 0.0)?;
        for (e, boxy) in spec.eigenvalues.iter().zip(&spec.box_sensitive) {
            out.push((*e, 2 * l + 1, *boxy));
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(out)
}

/// As [`negative_spectrum_3d`] with the channel cutoff found automatically:
/// stop after two consecutive empty channels.
pub fn negative_spectrum_auto(v: &RadialFunction) -> Result<Vec<(f64, u32, bool)>> {
    let mut empty_run = 0;
    let mut l = 0u32;
    loop {
        if channel_bound_count(v, l) == 0 {
            empty_run += 1;
            if empty_run == 2 {
                return negative_spectrum_3d(v, l + 1);
            }
        } else {
            empty_run = 0;
        }
        l += 1;
        if l > 200 {
            return Err(Error::LMaxTooSmall {
                l_max: l,
                still_bound: channel_bound_count(v, l),
            });
        }
    }
}

/// Eigenvalue-count bound check: `count(e <= 0) <= L0 int [V]_+^{3/2}`.
pub fn check_clr(v: &RadialFunction) -> Result<BoundReport> {
    let spectrum = negative_spectrum_auto(v)?;
    let count: u32 = spectrum.iter().map(|(_, d, _)| d).sum();
    let plus = v.map(Meaning::Generic, |_, x| x.max(0.0))?;
    let rhs = clr_constant() * lp_power_integral(&plus, 1.5)?;
    let sample = Sample::new("count", count as f64, rhs);
    Ok(BoundReport::from_samples("clr", vec![sample], 0.0, 0))
}

/// Eigenvalue-sum bound check: `sum_j e_j >= -L1 int [V]_+^{5/2}`.
pub fn check_lieb_thirring_sum(v: &RadialFunction) -> Result<BoundReport> {
    let spectrum = negative_spectrum_auto(v)?;
    let sum: f64 = spectrum.iter().map(|(e, d, _)| e * *d as f64).sum();
    let plus = v.map(Meaning::Generic, |_, x| x.max(0.0))?;
    let bound = -lt_sum_constant() * lp_power_integral(&plus, 2.5)?;
    // lhs <= rhs form: -sum <= L1 int
    let sample = Sample::new("sum", -sum, -bound);
    Ok(BoundReport::from_samples("lieb-thirring-sum", vec![sample], 0.0, 0))
}

/// Kinetic energy of a normalized radial orbital:
/// `1/2 int u'^2 + l(l+1)/2 int u^2/r^2`.
///
/// The slice below `r_min` is added in closed form from the regular
/// behavior `u ~ c r^{l+1}`; only s orbitals contribute measurably
/// (`u'^2` tends to a constant there).
pub fn orbital_kinetic(u: &RadialFunction, l: u32) -> f64 {
    let g = u.grid();
    let du = g.derivative_dr(u.values());
    let d2: Vec<f64> = du.iter().map(|x| x * x).collect();
    let cent: Vec<f64> = g
        .points()
        .iter()
        .zip(u.values())
        .map(|(&r, &uu)| uu * uu / (r * r))
        .collect();
    let below = 0.5 * du[0] * du[0] * g.r_min() / (2 * l + 1) as f64
        + 0.5 * (l * (l + 1)) as f64 * cent[0] * g.r_min() / (2 * l + 1) as f64;
    0.5 * g.integrate_dr(&d2) + 0.5 * (l * (l + 1)) as f64 * g.integrate_dr(&cent) + below
}

/// The Dirichlet-ball ground state `g` of width `s` sampled on `grid`,
/// plus `int |grad g|^2` by a dedicated quadrature over `[0, s]` (the
/// derivative jumps at `r = s`, so the grid rule does not apply).
pub fn dirichlet_ball_state(grid: &Arc<RadialGrid>, s: f64) -> Result<(RadialFunction, f64)> {
    let g = RadialFunction::from_fn(grid.clone(), Meaning::Orbital, |r| {
        if r >= s {
            0.0
        } else {
            (PI * r / s).sin() / ((2.0 * PI * s).sqrt() * r)
        }
    })?;
    // 4 pi r^2 g'(r)^2 = (2/s) [(pi/s) cos(pi r/s) - sin(pi r/s)/r]^2
    let integrand = |r: f64| -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let x = PI * r / s;
        let d = (PI / s) * x.cos() - x.sin() / r;
        2.0 / s * d * d
    };
    let m = 4096;
    let dr = s / m as f64;
    let mut grad2 = 0.0;
    for j in 0..m {
        let a = j as f64 * dr;
        grad2 += dr / 6.0
            * (integrand(a) + 4.0 * integrand(a + 0.5 * dr) + integrand(a + dr));
    }
    Ok((g, grad2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coulomb(z: f64) -> RadialFunction {
        let g = Arc::new(RadialGrid::log(1e-6 / z.max(1.0), 60.0, 4000).unwrap());
        RadialFunction::from_fn(g, Meaning::Potential, |r| z / r).unwrap()
    }

    #[test]
    fn hydrogen_s_levels() {
        let v = coulomb(1.0);
        let spec = solve_channel(&v, 0, 3).unwrap();
        let want = [-0.5, -0.125, -1.0 / 18.0];
        for (e, w) in spec.eigenvalues.iter().zip(want) {
            assert!((e - w).abs() < 1e-6, "{e} vs {w}");
        }
        // node counts follow the principal quantum number
        for (k, u) in spec.orbitals.iter().enumerate() {
            let mut nodes = 0;
            let vals = u.values();
            for i in 1..vals.len() - 1 {
                if vals[i] != 0.0 && vals[i + 1] != 0.0 && vals[i].signum() != vals[i + 1].signum()
                {
                    nodes += 1;
                }
            }
            assert_eq!(nodes, k, "orbital {k} has {nodes} nodes");
        }
    }

    #[test]
    fn hydrogenic_2p_of_z2() {
        let v = coulomb(2.0);
        let spec = solve_channel(&v, 1, 1).unwrap();
        assert!((spec.eigenvalues[0] + 0.5).abs() < 1e-6);
    }

    #[test]
    fn free_particle_has_no_bound_states() {
        let g = Arc::new(RadialGrid::log(1e-6, 60.0, 4000).unwrap());
        let v = RadialFunction::zeros(g, Meaning::Potential);
        assert_eq!(channel_bound_count(&v, 0), 0);
        let spec = solve_channel(&v, 0, 2).unwrap();
        assert!(spec.truncated);
        assert!(spec.eigenvalues.is_empty());
    }

    #[test]
    fn purely_repulsive_potential_is_empty() {
        let g = Arc::new(RadialGrid::log(1e-6, 60.0, 4000).unwrap());
        let v = RadialFunction::from_fn(g, Meaning::Potential, |r| -1.0 / (1.0 + r)).unwrap();
        assert!(negative_spectrum_auto(&v).unwrap().is_empty());
    }

    #[test]
    fn truncated_coulomb_spectrum_and_clr() {
        let g = Arc::new(RadialGrid::log(1e-6, 60.0, 4000).unwrap());
        let v =
            RadialFunction::from_fn(g, Meaning::Potential, |r| (1.0 / r - 0.5).max(0.0)).unwrap();
        let report = check_clr(&v).unwrap();
        assert_eq!(report.verdict, crate::report::Verdict::Pass);
        let report = check_lieb_thirring_sum(&v).unwrap();
        assert_eq!(report.verdict, crate::report::Verdict::Pass);
    }

    #[test]
    fn dirichlet_ball_gradient_energy() {
        let g = Arc::new(RadialGrid::log(1e-6, 60.0, 4000).unwrap());
        for &s in &[0.5, 1.0, 3.0] {
            let (_state, grad2) = dirichlet_ball_state(&g, s).unwrap();
            let want = (PI / s) * (PI / s);
            assert!(
                ((grad2 - want) / want).abs() < 1e-8,
                "s={s}: {grad2} vs {want}"
            );
        }
    }
}
