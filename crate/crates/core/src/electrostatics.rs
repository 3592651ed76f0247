//! Spherically symmetric electrostatics on the radial grid.
//!
//! The Newton potential of a radial charge distribution is evaluated by
//! splitting at the field radius,
//! `(rho * 1/|x|)(r) = P(r)/r + S(r)` with `P(r) = int_{s<r} 4 pi s^2 rho`
//! and `S(r) = int_{s>r} 4 pi s rho`, which is exact for radial charges.
//! Everything else here (screened potentials, the Coulomb inner product,
//! charge radii) is built from the same running integrals.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::ensure_finite;
#[allow(unused_imports)]
use crate::num::*;
use crate::radial::{ChargeProfile, Meaning, RadialFunction};

/// `int f(|x|) d^3x = 4 pi int f(r) r^2 dr` by grid quadrature.
pub fn integrate3d(f: &RadialFunction) -> Result<f64> {
    ensure_finite(f.values(), "integrand")?;
    let g = f.grid();
    let shell: Vec<f64> = g
        .points()
        .iter()
        .zip(f.values())
        .map(|(&r, &v)| 4.0 * PI * r * r * v)
        .collect();
    Ok(g.integrate_dr(&shell))
}

/// `int |f(|x|)|^p d^3x`.
pub fn lp_power_integral(f: &RadialFunction, p: f64) -> Result<f64> {
    ensure_finite(f.values(), "integrand")?;
    let g = f.grid();
    let shell: Vec<f64> = g
        .points()
        .iter()
        .zip(f.values())
        .map(|(&r, &v)| 4.0 * PI * r * r * v.abs().powf(p))
        .collect();
    let out = g.integrate_dr(&shell);
    if !out.is_finite() {
        return Err(Error::overflow(format!("L^{p} integral diverged")));
    }
    Ok(out)
}

/// `||f||_p = (int |f|^p)^(1/p)`.
pub fn lp_norm(f: &RadialFunction, p: f64) -> Result<f64> {
    Ok(lp_power_integral(f, p)?.powf(1.0 / p))
}

/// `int_{B(x,s)} |f|^p d^3y` for a radial `f` and an off-center ball; the
/// angular factor is the solid-angle fraction of each shell inside the ball.
pub fn lp_power_integral_ball(f: &RadialFunction, center_r: f64, s: f64, p: f64) -> Result<f64> {
    ensure_finite(f.values(), "integrand")?;
    let g = f.grid();
    let shell: Vec<f64> = g
        .points()
        .iter()
        .zip(f.values())
        .map(|(&t, &v)| {
            let frac = if center_r <= 0.0 {
                if t <= s {
                    1.0
                } else {
                    0.0
                }
            } else {
                let c = (center_r * center_r + t * t - s * s) / (2.0 * center_r * t);
                (1.0 - c.max(-1.0).min(1.0)) / 2.0
            };
            4.0 * PI * t * t * v.abs().powf(p) * frac
        })
        .collect();
    Ok(g.integrate_dr(&shell))
}

/// Running integrals `P(r) = int_{s<r} 4 pi s^2 f` and
/// `S(r) = int_{s>r} 4 pi s f` shared by the potential evaluators.
pub(crate) struct NewtonSweeps {
    pub prefix_charge: Vec<f64>,
    pub suffix_rs: Vec<f64>,
}

pub(crate) fn newton_sweeps(f: &RadialFunction) -> NewtonSweeps {
    let g = f.grid();
    let q_shell: Vec<f64> = g
        .points()
        .iter()
        .zip(f.values())
        .map(|(&r, &v)| 4.0 * PI * r * r * v)
        .collect();
    let s_shell: Vec<f64> = g
        .points()
        .iter()
        .zip(f.values())
        .map(|(&r, &v)| 4.0 * PI * r * v)
        .collect();
    let prefix_charge = g.cumulative_dr(&q_shell);
    let s_prefix = g.cumulative_dr(&s_shell);
    let s_total = s_prefix[s_prefix.len() - 1];
    let suffix_rs = s_prefix.iter().map(|p| s_total - p).collect();
    NewtonSweeps {
        prefix_charge,
        suffix_rs,
    }
}

fn check_density_like(rho: &RadialFunction) -> Result<()> {
    ensure_finite(rho.values(), "density")?;
    let scale = rho.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if rho
        .values()
        .iter()
        .any(|&v| v < -1e-10 * scale.max(1e-300))
    {
        return Err(Error::invalid(
            "density has negative samples beyond tolerance",
        ));
    }
    Ok(())
}

/// Newton potential `rho * |x|^{-1}` of a nonnegative radial density.
pub fn newton_potential(rho: &RadialFunction) -> Result<RadialFunction> {
    check_density_like(rho)?;
    let g = rho.grid();
    let sweeps = newton_sweeps(rho);
    let values: Vec<f64> = g
        .points()
        .iter()
        .enumerate()
        .map(|(i, &r)| sweeps.prefix_charge[i] / r + sweeps.suffix_rs[i])
        .collect();

    #[cfg(debug_assertions)]
    {
        // Newton's theorem: r*V is nondecreasing and bounded by the total charge.
        let total = sweeps.prefix_charge[g.n() - 1];
        let tol = 1e-11 * total.abs().max(1e-300);
        let mut prev = f64::NEG_INFINITY;
        for (i, &v) in values.iter().enumerate() {
            let rv = g.r(i) * v;
            debug_assert!(rv >= prev - tol, "r*V decreased at i={i}");
            debug_assert!(rv <= total + tol, "r*V exceeded total charge at i={i}");
            prev = rv;
        }
    }

    RadialFunction::new(g.clone(), values, Meaning::Potential)
}

/// Output of [`screened_potential`]; `clamped` records that the requested
/// screening radius fell outside the grid and was clamped.
#[derive(Debug, Clone)]
pub struct ScreenedPotential {
    pub potential: RadialFunction,
    pub radius: f64,
    pub clamped: bool,
}

/// Screened nuclear potential at radius `R`:
/// `Phi_R(r) = Z/r - int_{|y|<R} rho(y) |x-y|^{-1} dy`.
///
/// Harmonic (`= (Z - Q(R))/r`) for every `r >= R`.
pub fn screened_potential(rho: &RadialFunction, z: f64, radius: f64) -> Result<ScreenedPotential> {
    check_density_like(rho)?;
    if radius.is_nan() {
        return Err(Error::invalid("screening radius must be a number or +inf"));
    }
    let g = rho.grid();
    let (r_eff, clamped) = if radius < 0.0 {
        (0.0, true)
    } else if radius > g.r_max() {
        (g.r_max(), true)
    } else {
        (radius, false)
    };
    let sweeps = newton_sweeps(rho);
    let q_at = |r: f64| -> f64 {
        if r <= g.r_min() {
            0.0
        } else {
            g.interp_monotone(&sweeps.prefix_charge, r)
        }
    };
    let s_at = |r: f64| -> f64 {
        if r <= g.r_min() {
            sweeps.suffix_rs[0]
        } else if r >= g.r_max() {
            0.0
        } else {
            g.interp(&sweeps.suffix_rs, r)
        }
    };
    let q_r = q_at(r_eff);
    let s_r = s_at(r_eff);
    let values: Vec<f64> = g
        .points()
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            if r >= r_eff {
                (z - q_r) / r
            } else {
                // inner region: subtract the potential of the charge inside R only
                z / r - sweeps.prefix_charge[i] / r - (sweeps.suffix_rs[i] - s_r)
            }
        })
        .collect();
    Ok(ScreenedPotential {
        potential: RadialFunction::new(g.clone(), values, Meaning::Potential)?,
        radius: r_eff,
        clamped,
    })
}

/// Screened potential evaluated at its own radius,
/// `Phi_{|x|}(x) = Z/r - (1/r) int_{s<r} 4 pi s^2 rho ds`.
pub fn screened_at_own_radius(rho: &RadialFunction, z: f64) -> Result<RadialFunction> {
    check_density_like(rho)?;
    let g = rho.grid();
    let sweeps = newton_sweeps(rho);
    let values: Vec<f64> = g
        .points()
        .iter()
        .enumerate()
        .map(|(i, &r)| (z - sweeps.prefix_charge[i]) / r)
        .collect();
    RadialFunction::new(g.clone(), values, Meaning::Potential)
}

/// Newton potential without the nonnegativity check, for signed fields
/// (differences of densities). The split formula is linear, so it applies.
pub fn newton_potential_signed(f: &RadialFunction) -> Result<RadialFunction> {
    ensure_finite(f.values(), "field")?;
    let g = f.grid();
    let sweeps = newton_sweeps(f);
    let values: Vec<f64> = g
        .points()
        .iter()
        .enumerate()
        .map(|(i, &r)| sweeps.prefix_charge[i] / r + sweeps.suffix_rs[i])
        .collect();
    RadialFunction::new(g.clone(), values, Meaning::Potential)
}

/// Coulomb inner product
/// `D(f,g) = 1/2 iint f(x) |x-y|^{-1} g(y) dx dy`.
pub fn coulomb_inner(f: &RadialFunction, g: &RadialFunction) -> Result<f64> {
    f.check_same_grid(g)?;
    let pot = newton_potential_signed(g)?;
    let grid = f.grid();
    let shell: Vec<f64> = grid
        .points()
        .iter()
        .enumerate()
        .map(|(i, &r)| 4.0 * PI * r * r * f.values()[i] * pot.values()[i])
        .collect();
    let d = 0.5 * grid.integrate_dr(&shell);
    if !d.is_finite() {
        return Err(Error::overflow("Coulomb inner product diverged"));
    }
    Ok(d)
}

/// Coulomb norm `||f||_C = sqrt(D(f,f))`.
pub fn coulomb_norm(f: &RadialFunction) -> Result<f64> {
    Ok(coulomb_inner(f, f)?.max(0.0).sqrt())
}

/// Radius holding exactly `nu` electrons outside:
/// `int_{|x| >= R} rho = nu`, located on the monotone cumulative profile.
pub fn radius_of_charge(rho: &RadialFunction, nu: f64) -> Result<f64> {
    let profile = ChargeProfile::of(rho)?;
    radius_of_charge_profile(&profile, rho.grid().r_min(), rho.grid().r_max(), nu)
}

pub fn radius_of_charge_profile(
    profile: &ChargeProfile,
    r_min: f64,
    r_max: f64,
    nu: f64,
) -> Result<f64> {
    let total = profile.total;
    if !(0.0..=total * (1.0 + 1e-9)).contains(&nu) {
        return Err(Error::domain(format!(
            "exterior charge {nu} outside [0, {total}]"
        )));
    }
    if nu <= 0.0 {
        return Ok(r_max);
    }
    // quadrature-tolerance band around "everything outside"
    if nu >= total * (1.0 - 1e-9) {
        return Ok(r_min);
    }
    // target interior charge
    let target = total - nu;
    let mut lo = r_min;
    let mut hi = r_max;
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if profile.inside(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok((lo * hi).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;
    use alloc::sync::Arc;

    fn grid() -> Arc<RadialGrid> {
        Arc::new(RadialGrid::log(1e-6, 60.0, 4000).unwrap())
    }

    fn hydrogen_1s(g: &Arc<RadialGrid>) -> RadialFunction {
        RadialFunction::from_fn(g.clone(), Meaning::Density, |r| (-2.0 * r).exp() / PI).unwrap()
    }

    #[test]
    fn integrate3d_normalizes_hydrogen() {
        let g = grid();
        let rho = hydrogen_1s(&g);
        assert!((integrate3d(&rho).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn integrate3d_zero() {
        let g = grid();
        let zero = RadialFunction::zeros(g, Meaning::Density);
        assert_eq!(integrate3d(&zero).unwrap(), 0.0);
    }

    #[test]
    fn non_finite_samples_rejected() {
        let g = grid();
        let mut v = alloc::vec![0.0; g.n()];
        v[17] = f64::NAN;
        assert!(RadialFunction::new(g, v, Meaning::Generic).is_err());
    }

    #[test]
    fn newton_potential_of_hydrogen_matches_closed_form() {
        let g = grid();
        let rho = hydrogen_1s(&g);
        let v = newton_potential(&rho).unwrap();
        for &r in &[0.01f64, 0.1, 1.0, 3.0, 10.0] {
            let want = (1.0 - (-2.0 * r).exp() * (1.0 + r)) / r;
            let got = v.at(r);
            assert!((got - want).abs() < 1e-8 * (1.0 + want.abs()), "r={r}");
        }
    }

    #[test]
    fn newton_potential_of_zero_density() {
        let g = grid();
        let zero = RadialFunction::zeros(g, Meaning::Density);
        let v = newton_potential(&zero).unwrap();
        assert!(v.values().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn screened_potential_r_zero_is_bare_coulomb() {
        let g = grid();
        let rho = hydrogen_1s(&g);
        let sp = screened_potential(&rho, 1.0, 0.0).unwrap();
        for &i in &[0usize, 100, 2000, 3999] {
            let r = g.r(i);
            assert!((sp.potential.values()[i] - 1.0 / r).abs() < 1e-12 / r);
        }
        assert!(!sp.clamped);
    }

    #[test]
    fn screened_potential_full_radius_neutralizes() {
        let g = grid();
        let rho = hydrogen_1s(&g);
        let sp = screened_potential(&rho, 1.0, g.r_max()).unwrap();
        // beyond the 1s cloud the whole unit charge is screened
        let tail = sp.potential.at(30.0);
        assert!(tail.abs() < 1e-7, "tail {tail}");
        assert!(tail >= -1e-9);
    }

    #[test]
    fn screened_potential_infinite_radius_closed_form() {
        let g = grid();
        let rho = hydrogen_1s(&g);
        let sp = screened_potential(&rho, 1.0, f64::INFINITY).unwrap();
        assert!(sp.clamped);
        for &r in &[0.2f64, 1.0, 4.0] {
            let want = (-2.0 * r).exp() * (1.0 + 1.0 / r);
            assert!((sp.potential.at(r) - want).abs() < 1e-8, "r={r}");
        }
    }

    #[test]
    fn coulomb_inner_hydrogen_self_energy() {
        let g = grid();
        let rho = hydrogen_1s(&g);
        let d = coulomb_inner(&rho, &rho).unwrap();
        assert!((d - 0.3125).abs() < 1e-8, "D = {d}");
    }

    #[test]
    fn coulomb_inner_symmetry() {
        let g = grid();
        let f = hydrogen_1s(&g);
        let w = RadialFunction::from_fn(g.clone(), Meaning::Density, |r| {
            (-(r - 1.0) * (r - 1.0)).exp()
        })
        .unwrap();
        let a = coulomb_inner(&f, &w).unwrap();
        let b = coulomb_inner(&w, &f).unwrap();
        assert!((a - b).abs() <= 1e-10 * a.abs().max(b.abs()), "{a} vs {b}");
    }

    #[test]
    fn coulomb_norm_scaling_and_zero() {
        let g = grid();
        let f = hydrogen_1s(&g);
        let n1 = coulomb_norm(&f).unwrap();
        assert!((n1 - 0.3125f64.sqrt()).abs() < 1e-8);
        let scaled = f.map(Meaning::Generic, |_, v| -2.0 * v).unwrap();
        let n2 = coulomb_norm(&scaled).unwrap();
        assert!((n2 - 2.0 * n1).abs() < 1e-10);
        let zero = RadialFunction::zeros(g, Meaning::Density);
        assert_eq!(coulomb_norm(&zero).unwrap(), 0.0);
    }

    #[test]
    fn radius_of_charge_edges_and_hydrogen_half() {
        let g = grid();
        let rho = hydrogen_1s(&g);
        let total = integrate3d(&rho).unwrap();
        assert_eq!(radius_of_charge(&rho, total).unwrap(), g.r_min());
        assert_eq!(radius_of_charge(&rho, 0.0).unwrap(), g.r_max());
        // root of e^{-2R}(1 + 2R + 2R^2) = 1/2, bisected from the closed form
        let mut lo = 1.0f64;
        let mut hi = 2.0f64;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if (-2.0 * mid).exp() * (1.0 + 2.0 * mid + 2.0 * mid * mid) > 0.5 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let want = 0.5 * (lo + hi);
        let got = radius_of_charge(&rho, 0.5).unwrap();
        assert!((got - want).abs() < 1e-6, "{got} vs {want}");
        assert!((got - 1.3370).abs() < 1e-3);
        assert!(radius_of_charge(&rho, -0.1).is_err());
        assert!(radius_of_charge(&rho, 1.5).is_err());
    }
}
