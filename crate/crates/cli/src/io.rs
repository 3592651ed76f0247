//! Serialization of solver outputs and atomic file writes.

use std::path::Path;
use std::sync::Arc;

use serde_json::json;

use atomlab_core::hf::HfState;
use atomlab_core::tf::{ExteriorTfProblem, TfSolution};
use atomlab_core::{Meaning, RadialFunction, RadialGrid};

/// Write through a temp file plus rename so readers never see a torn file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

fn grid_json(g: &RadialGrid) -> serde_json::Value {
    json!({
        "type": "log",
        "n": g.n(),
        "r_min": g.r_min(),
        "r_max": g.r_max(),
    })
}

pub fn tf_summary_json(sol: &TfSolution) -> String {
    json!({
        "Z": sol.z,
        "N": sol.n_electrons,
        "mu": sol.mu,
        "energy": sol.energy,
        "residual": sol.residual,
    })
    .to_string()
}

pub fn tf_solution_json(sol: &TfSolution) -> String {
    json!({
        "Z": sol.z,
        "N": sol.n_electrons,
        "mu": sol.mu,
        "energy": sol.energy,
        "residual": sol.residual,
        "grid": grid_json(sol.grid()),
        "rho": sol.rho.values(),
        "phi": sol.phi.values(),
    })
    .to_string()
}

/// Three-column CSV `(r, rho, phi)` with the grid header line.
pub fn tf_solution_csv(sol: &TfSolution) -> String {
    let g = sol.grid();
    let mut out = format!(
        "# grid=log n={} r_min={} r_max={} meaning=density+potential\n",
        g.n(),
        g.r_min(),
        g.r_max()
    );
    out.push_str("r,rho,phi\n");
    for i in 0..g.n() {
        out.push_str(&format!(
            "{},{},{}\n",
            g.r(i),
            sol.rho.values()[i],
            sol.phi.values()[i]
        ));
    }
    out
}

pub fn otf_summary_json(sol: &TfSolution, problem: &ExteriorTfProblem) -> String {
    json!({
        "q": sol.z,
        "r_cut": problem.r_cut,
        "budget": problem.budget,
        "N": sol.n_electrons,
        "mu": sol.mu,
        "energy": sol.energy,
        "residual": sol.residual,
    })
    .to_string()
}

pub fn hf_summary_json(state: &HfState) -> String {
    json!({
        "Z": state.z,
        "N": state.n_electrons,
        "energy": state.energy_total,
        "kinetic": state.energy_kinetic,
        "nuclear": state.energy_nuclear,
        "direct": state.energy_direct,
        "exchange": state.energy_exchange,
        "homo": state.homo(),
        "scf_residual": state.scf_residual,
        "sweeps": state.sweeps,
    })
    .to_string()
}

pub fn hf_state_json(state: &HfState) -> String {
    let shells: Vec<serde_json::Value> = state
        .shells
        .iter()
        .map(|s| {
            json!({
                "n": s.n,
                "l": s.l,
                "occ": s.occ,
                "epsilon": s.epsilon,
            })
        })
        .collect();
    json!({
        "Z": state.z,
        "N": state.n_electrons,
        "shells": shells,
        "energies": {
            "total": state.energy_total,
            "kinetic": state.energy_kinetic,
            "nuclear": state.energy_nuclear,
            "direct": state.energy_direct,
            "exchange": state.energy_exchange,
        },
        "scf_residual": state.scf_residual,
        "grid": grid_json(state.grid()),
        "rho": state.rho.values(),
    })
    .to_string()
}

/// Multi-column CSV of the radial orbitals: `r, u_{n1 l1}, u_{n2 l2}, ...`.
pub fn hf_orbitals_csv(state: &HfState) -> String {
    let g = state.grid();
    let mut out = format!(
        "# grid=log n={} r_min={} r_max={} meaning=orbital\n",
        g.n(),
        g.r_min(),
        g.r_max()
    );
    out.push('r');
    for s in &state.shells {
        out.push_str(&format!(",u_{}{}", s.n, ["s", "p", "d", "f", "g"][s.l as usize % 5]));
    }
    out.push('\n');
    for i in 0..g.n() {
        out.push_str(&format!("{}", g.r(i)));
        for s in &state.shells {
            out.push_str(&format!(",{}", s.u.values()[i]));
        }
        out.push('\n');
    }
    out
}

/// Pull `(Z, rho)` back out of a saved mean-field state document.
pub fn parse_hf_state_density(text: &str) -> Result<(f64, RadialFunction), String> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("malformed state JSON: {e}"))?;
    let z = v["Z"].as_f64().ok_or("state JSON missing Z")?;
    let grid = &v["grid"];
    let n = grid["n"].as_u64().ok_or("grid missing n")? as usize;
    let r_min = grid["r_min"].as_f64().ok_or("grid missing r_min")?;
    let r_max = grid["r_max"].as_f64().ok_or("grid missing r_max")?;
    let rho_vals: Vec<f64> = v["rho"]
        .as_array()
        .ok_or("state JSON missing rho")?
        .iter()
        .map(|x| x.as_f64().ok_or("non-numeric density sample"))
        .collect::<Result<_, _>>()?;
    let g = Arc::new(RadialGrid::log(r_min, r_max, n).map_err(|e| e.to_string())?);
    let rho =
        RadialFunction::new(g, rho_vals, Meaning::Density).map_err(|e| e.to_string())?;
    Ok((z, rho))
}
