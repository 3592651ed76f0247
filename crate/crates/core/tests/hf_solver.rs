//! Integration tests for the restricted Hartree-Fock solver.

use atomlab_core::electrostatics::{integrate3d, lp_power_integral};
use atomlab_core::hf::{
    hf_energy_breakdown, hf_mean_field, ionization_energy, scf_solve, scf_solve_with, ScfSettings,
};
use atomlab_core::schrodinger::kinetic_bound_constant_spin2;
use atomlab_core::{Error, NumericsSettings};

#[test]
fn hydrogen_is_exact() {
    let state = scf_solve(1.0, 1, &ScfSettings::default()).unwrap();
    assert!(
        (state.energy_total + 0.5).abs() < 1e-6,
        "E = {}",
        state.energy_total
    );
    // one orbital: exchange cancels the direct self-interaction exactly
    assert!(
        (state.energy_direct - 0.3125).abs() < 1e-6,
        "direct {}",
        state.energy_direct
    );
    assert!(
        (state.energy_exchange - state.energy_direct).abs() < 1e-9,
        "direct {} vs exchange {}",
        state.energy_direct,
        state.energy_exchange
    );
    assert!((state.shells[0].epsilon + 0.5).abs() < 1e-6);
    // mean field: phi = e^{-2r} (1 + 1/r)
    let phi = hf_mean_field(&state).unwrap();
    for &r in &[0.5f64, 1.0, 2.0, 5.0] {
        let want = (-2.0 * r).exp() * (1.0 + 1.0 / r);
        assert!((phi.at(r) - want).abs() < 1e-6, "r={r}");
    }
}

#[test]
fn helium_closed_shell() {
    let state = scf_solve(2.0, 2, &ScfSettings::default()).unwrap();
    // classic restricted HF value for the helium ground state
    assert!(
        (state.energy_total + 2.8617).abs() < 1e-3,
        "E = {}",
        state.energy_total
    );
    assert!(state.energy_direct >= state.energy_exchange);
    assert!(state.energy_exchange > 0.0);
    let n = integrate3d(&state.rho).unwrap();
    assert!((n - 2.0).abs() < 1e-8, "electron count {n}");
    // bookkeeping identity
    let b = hf_energy_breakdown(&state);
    assert!(
        ((b.total - state.energy_total) / state.energy_total).abs() < 1e-9,
        "{} vs {}",
        b.total,
        state.energy_total
    );
}

#[test]
fn helium_virial_theorem() {
    let state = scf_solve(2.0, 2, &ScfSettings::default()).unwrap();
    let e_pot = state.energy_nuclear + state.energy_direct - state.energy_exchange;
    let virial = (2.0 * state.energy_kinetic + e_pot).abs() / state.energy_total.abs();
    assert!(virial < 1e-3, "virial defect {virial}");
}

#[test]
fn carbon_open_shell_converges() {
    let state = scf_solve(6.0, 6, &ScfSettings::default()).unwrap();
    assert!(state.energy_direct >= state.energy_exchange);
    assert!(state.shells.iter().all(|s| s.epsilon < 0.0));
    // spin split: the 2p shell is maximally polarized
    let p = state.shells.iter().find(|s| s.l == 1).unwrap();
    assert_eq!(p.occ_up, 2.0);
    assert_eq!(p.occ_dn, 0.0);
    // virial sanity for the neutral atom
    let e_pot = state.energy_nuclear + state.energy_direct - state.energy_exchange;
    let virial = (2.0 * state.energy_kinetic + e_pot).abs() / state.energy_total.abs();
    assert!(virial < 1e-3, "virial defect {virial}");
}

#[test]
fn neon_inequalities() {
    let state = scf_solve(10.0, 10, &ScfSettings::default()).unwrap();
    // classic restricted HF energy of neon is about -128.547
    assert!(
        (state.energy_total + 128.547).abs() < 0.05,
        "E = {}",
        state.energy_total
    );
    // exchange inequality
    let rho43 = lp_power_integral(&state.rho, 4.0 / 3.0).unwrap();
    assert!(state.energy_exchange <= 1.68 * rho43);
    // kinetic bound with the duality-consistent constant
    let rho53 = lp_power_integral(&state.rho, 5.0 / 3.0).unwrap();
    assert!(state.energy_kinetic >= kinetic_bound_constant_spin2() * rho53);
    // energy lower bound -3 (4 pi L1)^{2/3} Z^2 N^{1/3}
    let l1 = atomlab_core::schrodinger::lt_sum_constant();
    let bound = -3.0
        * (4.0 * std::f64::consts::PI * l1).powf(2.0 / 3.0)
        * state.z
        * state.z
        * (state.n_electrons as f64).cbrt();
    assert!(state.energy_total >= bound);
}

#[test]
fn energy_decreases_with_extra_electron_allowance() {
    // E(1, 2) >= E(2, 2): the functional is nonincreasing in N
    let one = scf_solve(2.0, 1, &ScfSettings::default()).unwrap();
    let two = scf_solve(2.0, 2, &ScfSettings::default()).unwrap();
    assert!((one.energy_total + 2.0).abs() < 1e-6, "He+ {}", one.energy_total);
    assert!(one.energy_total >= two.energy_total);
}

#[test]
fn helium_ionization_energy() {
    let numerics = NumericsSettings::default();
    let ie = ionization_energy(2, &ScfSettings::default(), &numerics, None).unwrap();
    // E(1,2) = -2 exactly; He RHF gives about 0.8617 hartree
    assert!(ie > 0.0);
    assert!((ie - 0.8617).abs() < 1e-3, "ionization {ie}");
}

#[test]
fn wildly_overloaded_atom_reports_unbound() {
    let r = scf_solve_with(
        2.0,
        10,
        &ScfSettings::default(),
        &NumericsSettings::default(),
        None,
    );
    match r {
        Err(Error::UnboundElectron { .. }) | Err(Error::ScfNonConvergence { .. }) => {}
        other => panic!("expected unbound/non-convergence, got {other:?}"),
    }
}
