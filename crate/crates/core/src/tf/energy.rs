//! The Thomas-Fermi energy functional.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::electrostatics::{coulomb_inner, integrate3d};
use crate::error::{Error, Result};
#[allow(unused_imports)]
use crate::num::*;
use crate::radial::{Meaning, RadialFunction};

/// `(3/10)(3 pi^2)^{2/3}`.
pub(crate) fn kinetic_coeff() -> f64 {
    0.3 * (3.0 * PI * PI).powf(2.0 / 3.0)
}

/// Total energy of a density in the nuclear Coulomb field:
/// `(3/10)(3 pi^2)^{2/3} int rho^{5/3} - Z int rho/|x| + D(rho, rho)`.
///
/// The nuclear-attraction and gradient-free kinetic integrands behave like
/// `r^{-1/2}` under the `rho ~ C r^{-3/2}` cusp, so the slice below `r_min`
/// carries a non-negligible share; it is added in closed form from a local
/// power-law fit of the first grid points.
pub fn tf_energy(rho: &RadialFunction, z: f64) -> Result<f64> {
    if rho.meaning() != Meaning::Density {
        return Err(Error::invalid("tf_energy expects a density"));
    }
    let g = rho.grid();
    let kc = kinetic_coeff();

    let kin_shell: Vec<f64> = g
        .points()
        .iter()
        .zip(rho.values())
        .map(|(&r, &v)| 4.0 * PI * r * r * kc * v.powf(5.0 / 3.0))
        .collect();
    let kinetic = g.integrate_dr(&kin_shell);

    let nuc_shell: Vec<f64> = g
        .points()
        .iter()
        .zip(rho.values())
        .map(|(&r, &v)| 4.0 * PI * r * v)
        .collect();
    let nuclear = -z * g.integrate_dr(&nuc_shell);

    let hartree = coulomb_inner(rho, rho)?;

    // cusp slice below r_min from rho ~ C r^{-3/2}
    let mut c_fit = 0.0;
    for i in 0..4 {
        c_fit += rho.values()[i] * g.r(i).powf(1.5);
    }
    c_fit /= 4.0;
    let rs = g.r_min().sqrt();
    let kin_corr = kc * 4.0 * PI * c_fit.powf(5.0 / 3.0) * 2.0 * rs;
    let nuc_corr = -z * 4.0 * PI * c_fit * 2.0 * rs;

    let total = kinetic + kin_corr + nuclear + nuc_corr + hartree;
    if !total.is_finite() {
        return Err(Error::overflow("thomas-fermi energy diverged"));
    }
    Ok(total)
}

/// The same functional with a general external potential `v` in place of
/// the nuclear `Z/|x|` term (no cusp correction; `v` is bounded).
pub fn tf_energy_with_potential(rho: &RadialFunction, v: &RadialFunction) -> Result<f64> {
    rho.check_same_grid(v)?;
    let g = rho.grid();
    let kc = kinetic_coeff();
    let kin_shell: Vec<f64> = g
        .points()
        .iter()
        .zip(rho.values())
        .map(|(&r, &d)| 4.0 * PI * r * r * kc * d.powf(5.0 / 3.0))
        .collect();
    let kinetic = g.integrate_dr(&kin_shell);
    let pot = integrate3d(&rho.map(Meaning::Generic, |r, d| d * v.at(r))?)?;
    let hartree = coulomb_inner(rho, rho)?;
    let total = kinetic - pot + hartree;
    if !total.is_finite() {
        return Err(Error::overflow("exterior functional diverged"));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;
    use alloc::sync::Arc;

    #[test]
    fn zero_density_has_zero_energy() {
        let g = Arc::new(RadialGrid::log(1e-6, 60.0, 4000).unwrap());
        let rho = RadialFunction::zeros(g, Meaning::Density);
        assert_eq!(tf_energy(&rho, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn hydrogenic_density_energy_closed_form() {
        // for rho = e^{-2r}/pi: kinetic = (3/10)(3pi^2)^{2/3} int rho^{5/3},
        // nuclear = -int rho/r = -1, hartree = 5/16
        let g = Arc::new(RadialGrid::log(1e-6, 60.0, 4000).unwrap());
        let rho =
            RadialFunction::from_fn(g, Meaning::Density, |r| (-2.0 * r).exp() / PI).unwrap();
        let e = tf_energy(&rho, 1.0).unwrap();
        // int rho^{5/3} d^3x = 4 pi pi^{-5/3} int r^2 e^{-10r/3} dr = 4 pi^{-2/3} * 2/(10/3)^3
        let i53 = 4.0 * PI.powf(-2.0 / 3.0) * 2.0 / (10.0f64 / 3.0).powi(3);
        let want = kinetic_coeff() * i53 - 1.0 + 0.3125;
        assert!((e - want).abs() < 1e-7, "{e} vs {want}");
    }
}
