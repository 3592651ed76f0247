//! Restricted (central-field) Hartree-Fock for atoms.
//!
//! The model minimizes the usual determinant energy functional over
//! configurations of radial shells `(n, l)` with the orbitals shared
//! across the shell and spin occupations split by maximal polarization
//! (`occ_up = min(occ, 2l+1)`). For integer-filled shells the resulting
//! one-body reduced density matrix is an exact determinant projection;
//! for fractionally filled shells it is the spherically averaged density
//! matrix, which is still admissible (`0 <= gamma <= 1`), so every
//! density-matrix inequality checked downstream applies verbatim.
//!
//! Full minimizers of the unrestricted problem need not be spherically
//! symmetric; everything this module produces refers to the restricted,
//! spherically averaged model.
//!
//! Exchange is exact within the model, evaluated through the multipole
//! screening functions `Y_k` (two cumulative sweeps per pair and
//! multipole), never as a dense operator.

mod aufbau;
mod props;
mod scf;
mod slater;

pub use aufbau::aufbau_configuration;
pub use props::{
    hf_energy_breakdown, hf_mean_field, ionization_energy, max_bound_electrons, EnergyBreakdown,
};
pub use scf::{scf_solve, scf_solve_with, HfState, Shell};
pub use slater::{screening_potential_k, slater_fk, slater_gk, wigner_3j000_sq};

/// SCF control knobs.
#[derive(Debug, Clone, PartialEq)]
pub struct ScfSettings {
    /// Density under-relaxation factor in (0, 1].
    pub mixing: f64,
    /// Convergence target for the worst orbital change per sweep.
    pub tol: f64,
    pub max_sweeps: usize,
    /// Multipole cutoff for exchange; `None` means `2 * l_max` of the
    /// occupied shells, which is exact for the occupied space.
    pub k_max: Option<u32>,
    /// Level shift applied to the orbital solves when the energy rises
    /// for three consecutive sweeps.
    pub level_shift: f64,
}

impl Default for ScfSettings {
    fn default() -> Self {
        ScfSettings {
            mixing: 0.4,
            tol: 1e-8,
            max_sweeps: 500,
            k_max: None,
            level_shift: 0.5,
        }
    }
}

impl ScfSettings {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.mixing > 0.0 && self.mixing <= 1.0) {
            return Err(crate::Error::invalid("mixing must lie in (0, 1]"));
        }
        if !(self.tol > 0.0) {
            return Err(crate::Error::invalid("tolerance must be positive"));
        }
        Ok(())
    }
}
