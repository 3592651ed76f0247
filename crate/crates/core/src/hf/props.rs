//! Derived quantities of a converged SCF state.

use alloc::vec::Vec;

use crate::electrostatics::newton_potential;
use crate::error::Result;
use crate::grid::NumericsSettings;
use crate::hf::scf::{energy_terms, HfState};
use crate::hf::ScfSettings;
use crate::radial::{Meaning, RadialFunction};
use crate::tf::TfWorkspace;

/// The four energy terms of the functional, recomputed from the orbitals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    pub nuclear: f64,
    pub direct: f64,
    pub exchange: f64,
    pub total: f64,
}

/// Recompute all four energy terms from the orbitals (not from any SCF
/// by-products) and return them together with the total.
pub fn hf_energy_breakdown(state: &HfState) -> EnergyBreakdown {
    if state.shells.is_empty() {
        return EnergyBreakdown {
            kinetic: 0.0,
            nuclear: 0.0,
            direct: 0.0,
            exchange: 0.0,
            total: 0.0,
        };
    }
    let (kinetic, nuclear, direct, exchange) = energy_terms(state.z, &state.shells);
    EnergyBreakdown {
        kinetic,
        nuclear,
        direct,
        exchange,
        total: kinetic + nuclear + direct - exchange,
    }
}

/// Mean-field potential `phi = Z/r - rho * |x|^{-1}`.
pub fn hf_mean_field(state: &HfState) -> Result<RadialFunction> {
    let hartree = newton_potential(&state.rho)?;
    let g = state.grid();
    let vals: Vec<f64> = g
        .points()
        .iter()
        .enumerate()
        .map(|(i, &r)| state.z / r - hartree.values()[i])
        .collect();
    RadialFunction::new(g.clone(), vals, Meaning::Potential)
}

/// Ionization energy of the neutral atom, `E(Z-1, Z) - E(Z, Z)`.
pub fn ionization_energy(
    z: u32,
    settings: &ScfSettings,
    numerics: &NumericsSettings,
    tf: Option<&TfWorkspace>,
) -> Result<f64> {
    if z < 2 {
        return Err(crate::Error::domain("ionization energy needs Z >= 2"));
    }
    let neutral = crate::hf::scf::scf_solve_with(z as f64, z, settings, numerics, tf)?;
    let cation = crate::hf::scf::scf_solve_with(z as f64, z - 1, settings, numerics, tf)?;
    Ok(cation.energy_total - neutral.energy_total)
}

/// Largest electron number the mean field binds: SCF converges and the
/// highest occupied orbital stays strictly below the box-sensitivity
/// threshold. Bounded by `2Z + 1`; convergence failures count as unbound.
pub fn max_bound_electrons(
    z: u32,
    settings: &ScfSettings,
    numerics: &NumericsSettings,
    tf: Option<&TfWorkspace>,
) -> u32 {
    let cap = 2 * z + 1;
    let mut best = 0;
    // anion attempts that fail should fail fast
    let probe = ScfSettings {
        max_sweeps: settings.max_sweeps.min(200),
        ..settings.clone()
    };
    for n in z..=cap {
        match crate::hf::scf::scf_solve_with(z as f64, n, &probe, numerics, tf) {
            Ok(_) => best = n,
            Err(_) => break,
        }
    }
    if best == 0 {
        // fall back to scanning below Z (heavily stripped fields all bind)
        z.min(cap)
    } else {
        best
    }
}
