//! Integration tests for the Thomas-Fermi solvers: binding energy,
//! scaling, Sommerfeld sandwich, screened-potential and density bounds,
//! ionic solves, and the exterior problem.

use std::f64::consts::PI;

use atomlab_core::electrostatics::{integrate3d, screened_at_own_radius};
use atomlab_core::tf::{
    sommerfeld_lower, sommerfeld_upper, tf_energy, ExteriorTfProblem, TfConstants, TfWorkspace,
};
use atomlab_core::{Meaning, NumericsSettings, RadialFunction};

fn workspace() -> TfWorkspace {
    TfWorkspace::new(NumericsSettings::default()).unwrap()
}

#[test]
fn neutral_hydrogen_binding_energy() {
    let ws = workspace();
    let sol = ws.solve_neutral(1.0).unwrap();
    assert!(
        (sol.energy + 0.7687).abs() < 8e-4,
        "energy = {}",
        sol.energy
    );
    assert_eq!(sol.mu, 0.0);
    let n = integrate3d(&sol.rho).unwrap();
    assert!((n - 1.0).abs() < 1e-6, "electron count {n}");
    assert!(sol.residual < 1e-6, "residual {}", sol.residual);
    // nuclear singularity: phi * r -> Z at the first grid point
    let g = sol.grid();
    let rv = sol.phi.values()[0] * g.r(0);
    assert!((rv - 1.0).abs() < 1e-4, "r phi(r_min) = {rv}");
}

#[test]
fn energy_scales_as_z_to_seven_thirds() {
    let ws = workspace();
    let ratios: Vec<f64> = [1.0, 10.0, 100.0]
        .iter()
        .map(|&z| ws.solve_neutral(z).unwrap().energy / z.powf(7.0 / 3.0))
        .collect();
    for r in &ratios[1..] {
        assert!(
            ((r - ratios[0]) / ratios[0]).abs() < 1e-5,
            "ratios {ratios:?}"
        );
    }
}

#[test]
fn potential_scaling_law() {
    // phi_Z(r) = Z^{4/3} phi_1(Z^{1/3} r)
    let ws = workspace();
    let z = 10.0f64;
    let sol_z = ws.solve_neutral(z).unwrap();
    let sol_1 = ws.solve_neutral(1.0).unwrap();
    for &r in &[1e-3, 0.05, 0.7, 3.0, 20.0] {
        let lhs = sol_z.phi.at(r);
        let rhs = z.powf(4.0 / 3.0) * sol_1.phi.at(z.powf(1.0 / 3.0) * r);
        assert!(
            ((lhs - rhs) / rhs).abs() < 1e-6,
            "r={r}: {lhs} vs {rhs}"
        );
    }
}

#[test]
fn sommerfeld_sandwich_every_grid_point() {
    let ws = workspace();
    for &z in &[1.0, 100.0] {
        let sol = ws.solve_neutral(z).unwrap();
        let g = sol.grid();
        for i in 0..g.n() {
            let r = g.r(i);
            let phi = sol.phi.values()[i];
            let up = sommerfeld_upper(r, 0.0, z);
            let lo = sommerfeld_lower(r, z, z);
            let slack = 1e-5 * phi.abs();
            assert!(phi <= up + slack, "z={z} r={r}: phi={phi} upper={up}");
            assert!(phi >= lo - slack, "z={z} r={r}: phi={phi} lower={lo}");
        }
    }
}

#[test]
fn screened_potential_bound_at_fifty_probes() {
    let ws = workspace();
    let c = TfConstants::new();
    for &z in &[1.0, 100.0] {
        let sol = ws.solve_neutral(z).unwrap();
        let own = screened_at_own_radius(&sol.rho, z).unwrap();
        let g = sol.grid();
        for k in 0..50 {
            let r = g.r_min() * ((g.r_max() / g.r_min()).ln() * (k as f64 + 0.5) / 50.0).exp();
            let phi_r = own.at(r);
            let bound = c.screen4 * r.powi(-4);
            assert!(
                phi_r <= bound + 1e-8,
                "z={z} r={r}: screened {phi_r} bound {bound}"
            );
        }
    }
}

#[test]
fn density_bounded_by_sommerfeld_tail() {
    let ws = workspace();
    let sol = ws.solve_neutral(50.0).unwrap();
    let bound_c = 3.0f64.powi(5) * 2.0f64.powi(-3) * PI;
    let g = sol.grid();
    for i in 0..g.n() {
        let r = g.r(i);
        assert!(
            sol.rho.values()[i] <= bound_c * r.powi(-6) * (1.0 + 1e-9),
            "r={r}"
        );
    }
}

#[test]
fn ionic_solve_constraints_and_sandwich() {
    let ws = workspace();
    let z = 10.0;
    let sol = ws.solve(z, z / 2.0).unwrap();
    assert!(sol.mu > 0.0);
    let n = integrate3d(&sol.rho).unwrap();
    assert!(((n - 5.0) / 5.0).abs() < 1e-6, "N = {n}");
    assert!(sol.residual < 1e-6, "residual {}", sol.residual);
    // neutral potential sandwiches the ionic one: phi0 <= phi <= phi0 + mu
    let neutral = ws.solve_neutral(z).unwrap();
    let g = sol.grid();
    for i in 0..g.n() {
        let phi = sol.phi.values()[i];
        let phi0 = neutral.phi.at(g.r(i));
        let slack = 5e-5 * (phi0.abs() + sol.mu);
        assert!(phi >= phi0 - slack, "i={i}: {phi} < {phi0}");
        assert!(phi <= phi0 + sol.mu + slack, "i={i}: {phi} > {phi0} + mu");
    }
}

#[test]
fn vanishing_electron_limit() {
    let ws = workspace();
    let z = 10.0;
    let n_target = 1e-4 * z;
    let sol = ws.solve(z, n_target).unwrap();
    let n = integrate3d(&sol.rho).unwrap();
    assert!(((n - n_target) / n_target).abs() < 1e-6, "N = {n}");
    // phi -> Z/r pointwise within 1e-3 * Z/r
    let g = sol.grid();
    for i in (0..g.n()).step_by(97) {
        let r = g.r(i);
        let bare = z / r;
        assert!(
            (sol.phi.values()[i] - bare).abs() <= 1e-3 * bare,
            "r={r}"
        );
    }
}

#[test]
fn neutral_request_beyond_neutrality_returns_neutral() {
    let ws = workspace();
    let a = ws.solve(6.0, 9.0).unwrap();
    let b = ws.solve_neutral(6.0).unwrap();
    assert_eq!(a.mu, 0.0);
    assert_eq!(a.n_electrons, 9.0);
    assert_eq!(a.energy, b.energy);
}

#[test]
fn chemical_potential_estimate() {
    // (mu)^{3/4} <= 2^{3/4}/(3 sqrt(pi)) (1 + |a(R)| R^-zeta)^{1/2} (Z - N)
    // with a(R) measured from the solved potential at R = beta0 Z^{-1/3}
    let ws = workspace();
    let c = TfConstants::new();
    for &(z, frac) in &[(10.0f64, 0.5f64), (36.0, 0.5), (36.0, 0.9)] {
        let n = z * frac;
        let sol = ws.solve(z, n).unwrap();
        let r_m = c.beta0 * z.powf(-1.0 / 3.0);
        let phi_r = sol.phi.at(r_m);
        if sol.mu >= phi_r {
            continue; // estimate needs mu < phi at the measuring radius
        }
        let a_meas = ((phi_r / (c.somm4 * r_m.powi(-4))).powf(-0.5) - 1.0) * r_m.powf(c.zeta);
        let rhs = 2.0f64.powf(0.75) / (3.0 * PI.sqrt())
            * (1.0 + a_meas.abs() * r_m.powf(-c.zeta)).sqrt()
            * (z - n);
        assert!(
            sol.mu.powf(0.75) <= rhs * (1.0 + 1e-9),
            "z={z} n={n}: mu^(3/4) = {} vs {rhs}",
            sol.mu.powf(0.75)
        );
    }
}

#[test]
fn energy_functional_minimality_probe() {
    let ws = workspace();
    let sol = ws.solve_neutral(1.0).unwrap();
    let scaled = sol.rho.map(Meaning::Density, |_, v| 1.05 * v).unwrap();
    let e_scaled = tf_energy(&scaled, 1.0).unwrap();
    assert!(e_scaled > sol.energy, "{e_scaled} vs {}", sol.energy);
    // and the universal lower bound -e0 Z^{7/3} holds for both
    assert!(sol.energy >= -0.7687 - 8e-4);
}

#[test]
fn exterior_zero_budget_is_trivial() {
    let ws = workspace();
    let sol = ws.solve_neutral(10.0).unwrap();
    let problem = ExteriorTfProblem::from_density(&sol.rho, 10.0, 1.0).unwrap();
    let empty = ExteriorTfProblem {
        budget: 0.0,
        ..problem
    };
    let out = ws.solve_exterior(&empty).unwrap();
    assert!(out.n_electrons.abs() < 1e-9);
    // with no charge the potential is the bare monopole q/r
    let g = out.grid().clone();
    let q = empty.v.grid().r_max() * empty.v.values()[empty.v.grid().n() - 1];
    for i in (0..g.n()).step_by(53) {
        let r = g.r(i);
        assert!(
            (out.phi.values()[i] - q / r).abs() < 1e-9 / r,
            "r={r}: {} vs {}",
            out.phi.values()[i],
            q / r
        );
    }
}

#[test]
fn exterior_solve_reproduces_the_tf_tail() {
    let ws = workspace();
    let z = 10.0;
    let sol = ws.solve_neutral(z).unwrap();
    let r_cut = 1.0;
    let problem = ExteriorTfProblem::from_density(&sol.rho, z, r_cut).unwrap();
    let out = ws.solve_exterior(&problem).unwrap();
    assert!(
        out.mu.abs() < 1e-6,
        "exterior chemical potential {}",
        out.mu
    );
    // L1 distance between the exterior solve and the restricted TF density,
    // measured on the exterior grid: the exterior density is discontinuous
    // at r_cut, so interpolate the smooth TF side, never the jump side.
    let g = out.grid();
    let diff = RadialFunction::new(
        g.clone(),
        g.points()
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let tail = if r < r_cut { 0.0 } else { sol.rho.at(r) };
                (out.rho.values()[i] - tail).abs()
            })
            .collect(),
        Meaning::Generic,
    )
    .unwrap();
    let l1 = integrate3d(&diff).unwrap();
    let tail_mass = problem.budget;
    assert!(
        l1 / tail_mass < 1e-3,
        "relative L1 mismatch {} (tail mass {tail_mass})",
        l1 / tail_mass
    );
    assert!(out.residual < 1e-6);
}
