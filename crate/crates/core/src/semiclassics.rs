//! Phase-space (semiclassical) energy and density expressions, coherent
//! trial constructions, and two-sided eigenvalue-sum bounds.
//!
//! All operators here are spinless: `h = -1/2 lap - V` acts on scalar
//! wavefunctions; the spin factor 2 enters only in the mean-field modules.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::electrostatics::{integrate3d, lp_power_integral};
use crate::error::{Error, Result};
#[allow(unused_imports)]
use crate::num::*;
use crate::prng::SplitMix64;
use crate::radial::{Meaning, RadialFunction};
use crate::schrodinger::{clr_constant, lt_sum_constant, negative_spectrum_auto};
use crate::smear::smear_g2;

/// `2^{3/2} (15 pi^2)^{-1}`, the phase-space volume constant of the
/// eigenvalue sum.
pub fn semiclassical_energy_constant() -> f64 {
    2.0f64.powf(1.5) / (15.0 * PI * PI)
}

/// Semiclassical eigenvalue sum `-2^{3/2}(15 pi^2)^{-1} int [V]_+^{5/2}`.
pub fn semiclassical_energy(v: &RadialFunction) -> Result<f64> {
    let plus = v.map(Meaning::Generic, |_, x| x.max(0.0))?;
    let i52 = lp_power_integral(&plus, 2.5)?;
    if !i52.is_finite() {
        return Err(Error::overflow("semiclassical integral diverged"));
    }
    Ok(-semiclassical_energy_constant() * i52)
}

/// Semiclassical density `2^{3/2}(6 pi^2)^{-1} [V]_+^{3/2}` (spinless).
pub fn semiclassical_density(v: &RadialFunction) -> Result<RadialFunction> {
    let c = 2.0f64.powf(1.5) / (6.0 * PI * PI);
    v.map(Meaning::Density, |_, x| c * x.max(0.0).powf(1.5))
}

/// Coherent trial pair: the smeared semiclassical density together with
/// its kinetic energy
/// `2^{1/2}(5 pi^2)^{-1} int [V]_+^{5/2} + (pi^2 / 2 s^2) int rho_semi`.
pub fn coherent_trial(v: &RadialFunction, s: f64) -> Result<(RadialFunction, f64)> {
    let rho = semiclassical_density(v)?;
    let smeared = smear_g2(&rho, s)?;
    let plus = v.map(Meaning::Generic, |_, x| x.max(0.0))?;
    let i52 = lp_power_integral(&plus, 2.5)?;
    let mass = integrate3d(&rho)?;
    let kinetic = 2.0f64.sqrt() / (5.0 * PI * PI) * i52 + 0.5 * PI * PI / (s * s) * mass;
    Ok((smeared, kinetic))
}

/// Outcome of the two-sided eigenvalue-sum check on one potential.
#[derive(Debug, Clone)]
pub struct SemiclassicalReport {
    pub v_id: String,
    pub e_semi: f64,
    pub e_exact: f64,
    pub lower_76: f64,
    pub upper_77: f64,
    pub s_used: f64,
    pub delta_used: f64,
    /// Lower bound from the coherent-state construction at the recorded
    /// `(s, delta)` with `N` the bound-state count.
    pub lower_coherent: f64,
    pub box_sensitive: bool,
}

impl SemiclassicalReport {
    pub fn sandwich_holds(&self) -> bool {
        self.lower_76 <= self.e_exact && self.e_exact <= self.upper_77
    }
}

/// `A_L = (9/4) 2^{-9/10} (15 pi^2)^{3/5} (2 pi^2/5)^{1/3} L0^{1/3} L1^{4/15}`.
pub fn lower_bound_amplitude() -> f64 {
    2.25 * 2.0f64.powf(-0.9)
        * (15.0 * PI * PI).powf(0.6)
        * (2.0 * PI * PI / 5.0).powf(1.0 / 3.0)
        * clr_constant().powf(1.0 / 3.0)
        * lt_sum_constant().powf(4.0 / 15.0)
}

/// Two-sided bounds on the eigenvalue sum in terms of `||V||_{5/2}`,
/// `||grad V||_{5/2}` and `||V||_{3/2}`:
///
/// lower: `-2^{3/2}(15 pi^2)^{-1} int V^{5/2} {1 + A_L ||grad V||_{5/2}^{2/3} ||V||_{3/2}^{1/2} ||V||_{5/2}^{-3/2}}^{5/3}`
/// upper: `-2^{3/2}(15 pi^2)^{-1} int V^{5/2} + 2^{-1/2} pi^{-4/3} ||V||_{5/2} ||grad V||_{5/2}^{2/3} ||V||_{3/2}^{1/2}`.
pub fn eigenvalue_sum_bounds(v: &RadialFunction) -> Result<(f64, f64)> {
    let vmax = v.values().iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if v.values().iter().any(|&x| x < -1e-12 * vmax) {
        return Err(Error::domain("the two-sided bounds need V >= 0"));
    }
    let i52 = lp_power_integral(v, 2.5)?;
    let i32m = lp_power_integral(v, 1.5)?;
    let g = v.grid();
    let dv = g.derivative_dr(v.values());
    let grad = RadialFunction::new(g.clone(), dv, Meaning::Generic)?;
    let grad52 = lp_power_integral(&grad, 2.5)?;
    let n52 = i52.powf(0.4); // ||V||_{5/2}
    let n32 = i32m.powf(2.0 / 3.0); // ||V||_{3/2}
    let ngrad = grad52.powf(0.4); // ||grad V||_{5/2}
    let bracket =
        1.0 + lower_bound_amplitude() * ngrad.powf(2.0 / 3.0) * n32.sqrt() / n52.powf(1.5);
    let lower = -semiclassical_energy_constant() * i52 * bracket.powf(5.0 / 3.0);
    let upper = -semiclassical_energy_constant() * i52
        + 2.0f64.powf(-0.5) * PI.powf(-4.0 / 3.0) * n52 * ngrad.powf(2.0 / 3.0) * n32.sqrt();
    Ok((lower, upper))
}

/// Coherent-state lower bound at explicit `(delta, s)`:
/// `sum_{j<=N} e_j >= -2^{3/2}(15 pi^2)^{-1} (1-delta)^{-3/2} int [V]_+^{5/2}
///  - pi^2 s^{-2} N / 2 - L1 delta^{-3/2} || [V - V*g^2]_+ ||_{5/2}^{5/2}`.
pub fn coherent_lower_bound(
    v: &RadialFunction,
    n_states: usize,
    delta: f64,
    s: f64,
) -> Result<f64> {
    if !(0.0 < delta && delta < 1.0) {
        return Err(Error::domain("delta must lie in (0, 1)"));
    }
    let plus = v.map(Meaning::Generic, |_, x| x.max(0.0))?;
    let i52 = lp_power_integral(&plus, 2.5)?;
    let smeared = smear_g2(v, s)?;
    let defect = RadialFunction::new(
        v.grid().clone(),
        v.values()
            .iter()
            .zip(smeared.values())
            .map(|(a, b)| (a - b).max(0.0))
            .collect(),
        Meaning::Generic,
    )?;
    let defect52 = lp_power_integral(&defect, 2.5)?;
    Ok(
        -semiclassical_energy_constant() * (1.0 - delta).powf(-1.5) * i52
            - 0.5 * PI * PI / (s * s) * n_states as f64
            - lt_sum_constant() * delta.powf(-1.5) * defect52,
    )
}

/// Run the full two-sided check on one potential.
pub fn check_semiclassical_bounds(
    v_id: impl Into<String>,
    v: &RadialFunction,
) -> Result<SemiclassicalReport> {
    let spectrum = negative_spectrum_auto(v)?;
    let e_exact: f64 = spectrum.iter().map(|(e, d, _)| e * *d as f64).sum();
    let n_states: u32 = spectrum.iter().map(|(_, d, _)| *d).sum();
    let box_sensitive = spectrum.iter().any(|(_, _, b)| *b);
    let (lower_76, upper_77) = eigenvalue_sum_bounds(v)?;
    let e_semi = semiclassical_energy(v)?;
    let (delta_used, s_used) = (0.5, 1.0);
    let lower_coherent = coherent_lower_bound(v, n_states as usize, delta_used, s_used)?;
    Ok(SemiclassicalReport {
        v_id: v_id.into(),
        e_semi,
        e_exact,
        lower_76,
        upper_77,
        s_used,
        delta_used,
        lower_coherent,
        box_sensitive,
    })
}

/// The deterministic randomized potential suite: truncated-Coulomb wells
/// `c [1/r - 1/R]_+` and gaussian wells `c exp(-(r/w)^2)` with
/// `c in [1, 100]`, `R, w in [0.5, 5]`.
pub fn standard_suite(
    grid: &alloc::sync::Arc<crate::grid::RadialGrid>,
    count: usize,
    seed: u64,
) -> Result<Vec<(String, RadialFunction)>> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let c = rng.uniform(1.0, 100.0);
        let width = rng.uniform(0.5, 5.0);
        if i % 2 == 0 {
            let f = RadialFunction::from_fn(grid.clone(), Meaning::Potential, |r| {
                c * (1.0 / r - 1.0 / width).max(0.0)
            })?;
            out.push((format!("coulomb-well-{i} c={c:.3} R={width:.3}"), f));
        } else {
            let f = RadialFunction::from_fn(grid.clone(), Meaning::Potential, |r| {
                c * (-(r / width) * (r / width)).exp()
            })?;
            out.push((format!("gaussian-well-{i} c={c:.3} w={width:.3}"), f));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;
    use alloc::sync::Arc;

    fn grid() -> Arc<RadialGrid> {
        Arc::new(RadialGrid::log(1e-6, 60.0, 4000).unwrap())
    }

    #[test]
    fn zero_potential_gives_zero_everything() {
        let g = grid();
        let v = RadialFunction::zeros(g, Meaning::Potential);
        assert_eq!(semiclassical_energy(&v).unwrap(), 0.0);
        let rho = semiclassical_density(&v).unwrap();
        assert!(rho.values().iter().all(|&x| x == 0.0));
        let (d, k) = coherent_trial(&v, 1.0).unwrap();
        assert!(k == 0.0);
        assert!(integrate3d(&d).unwrap().abs() < 1e-14);
    }

    #[test]
    fn truncated_coulomb_energy_quadrature() {
        // V = [1/r - 1]_+ : int [V]^{5/2} d^3x = 4 pi int_0^1 (1/r - 1)^{5/2} r^2 dr
        let g = grid();
        let v = RadialFunction::from_fn(g, Meaning::Potential, |r| (1.0 / r - 1.0).max(0.0))
            .unwrap();
        let got = semiclassical_energy(&v).unwrap();
        // oracle over the grid's own domain [r_min, 1]: substituting
        // r = t^2 turns the integrand into the smooth 2 (1 - t^2)^{5/2}
        let m = 200_000;
        let t0 = 1e-3; // sqrt(r_min)
        let dt = (1.0 - t0) / m as f64;
        let f = |t: f64| 2.0 * (1.0 - t * t).max(0.0).powf(2.5);
        let mut acc = 0.0;
        for j in 0..m {
            let a = t0 + j as f64 * dt;
            acc += dt / 6.0 * (f(a) + 4.0 * f(a + 0.5 * dt) + f(a + dt));
        }
        let want = -semiclassical_energy_constant() * 4.0 * PI * acc;
        assert!(((got - want) / want).abs() < 1e-6, "{got} vs oracle {want}");
        // and the closed form over [0, 1] is 5 pi/16; the slice below
        // r_min carries the (immaterial) difference
        let full = -semiclassical_energy_constant() * 4.0 * PI * 5.0 * PI / 16.0;
        assert!(((got - full) / full).abs() < 3e-3);
    }

    #[test]
    fn energy_scaling_law() {
        // V -> lambda^2 V(lambda r) scales the integral by lambda^2
        let g = grid();
        let base = |r: f64| 5.0 * (-(r / 2.0) * (r / 2.0)).exp();
        let v1 = RadialFunction::from_fn(g.clone(), Meaning::Potential, base).unwrap();
        let lam = 2.0;
        let v2 =
            RadialFunction::from_fn(g, Meaning::Potential, |r| lam * lam * base(lam * r))
                .unwrap();
        let e1 = semiclassical_energy(&v1).unwrap();
        let e2 = semiclassical_energy(&v2).unwrap();
        assert!(
            ((e2 / e1 - lam * lam) / (lam * lam)).abs() < 1e-9,
            "ratio {}",
            e2 / e1
        );
    }

    #[test]
    fn coherent_trial_mass_and_large_s_limit() {
        let g = grid();
        let v = RadialFunction::from_fn(g, Meaning::Potential, |r| {
            20.0 * (-(r / 1.5) * (r / 1.5)).exp()
        })
        .unwrap();
        let rho = semiclassical_density(&v).unwrap();
        let mass = integrate3d(&rho).unwrap();
        let (smeared, kinetic_s) = coherent_trial(&v, 0.5).unwrap();
        let smeared_mass = integrate3d(&smeared).unwrap();
        assert!(
            ((smeared_mass - mass) / mass).abs() < 1e-6,
            "{smeared_mass} vs {mass}"
        );
        // s -> large: kinetic approaches the phase-space value
        let i52 = lp_power_integral(&v, 2.5).unwrap();
        let limit = 2.0f64.sqrt() / (5.0 * PI * PI) * i52;
        let (_, kinetic_l) = coherent_trial(&v, 8.0).unwrap();
        assert!(kinetic_s > kinetic_l);
        assert!(((kinetic_l - limit) / limit).abs() < 0.02);
    }

    #[test]
    fn deep_gaussian_well_sandwich() {
        let g = grid();
        let v =
            RadialFunction::from_fn(g, Meaning::Potential, |r| 50.0 * (-r * r).exp()).unwrap();
        let rep = check_semiclassical_bounds("deep-gaussian", &v).unwrap();
        assert!(rep.sandwich_holds(), "{rep:?}");
        let ratio = rep.e_exact / rep.e_semi;
        assert!((0.5..1.5).contains(&ratio), "ratio {ratio}");
        assert!(rep.lower_coherent <= rep.e_exact);
    }

    #[test]
    fn uncoupled_well_has_trivial_sandwich() {
        let g = grid();
        let v = RadialFunction::from_fn(g, Meaning::Potential, |r| {
            1e-4 * (-(r / 1.0) * (r / 1.0)).exp()
        })
        .unwrap();
        let rep = check_semiclassical_bounds("feeble", &v).unwrap();
        assert_eq!(rep.e_exact, 0.0);
        assert!(rep.lower_76 <= 0.0 && 0.0 <= rep.upper_77);
    }
}
