//! The `verify` command: suite composition, report files, and the ledger.

use std::path::Path;
use std::process::ExitCode;

use serde_json::json;

use atomlab_core::hf::ScfSettings;
use atomlab_core::verify::{SweepPlan, Verifier};
use atomlab_core::{BoundReport, NumericsSettings, Verdict};

use crate::config::PlanFile;
use crate::io::write_atomic;
use crate::CliError;

fn run_suite(
    name: &str,
    verifier: &mut Verifier,
    plan: &SweepPlan,
) -> Result<Vec<BoundReport>, CliError> {
    let mut out = Vec::new();
    match name {
        "tf" => {
            out.extend(verifier.check_sommerfeld_sandwich(plan)?);
            out.push(verifier.check_screened_tf_bound(plan)?);
            out.push(verifier.check_chemical_potential(plan)?);
        }
        "hf" => {
            out.extend(verifier.check_hf_inequalities(plan)?);
            out.extend(verifier.check_ionization_suite(plan)?);
        }
        "semiclassics" => {
            out.extend(verifier.check_semiclassical_suite(plan)?);
        }
        "bounds" => {
            out.push(verifier.check_coulomb_norm_estimate(plan)?);
            out.push(verifier.check_pointwise_newton_bound(plan)?);
            out.extend(verifier.check_potential_estimate(plan)?);
            out.extend(verifier.check_radius_asymptote(plan)?);
            out.push(verifier.check_exterior_l1_sweep(plan)?);
            let z_heavy = plan.z_list.iter().copied().filter(|&z| z >= 10).max();
            if let Some(z) = z_heavy {
                // the exterior comparison wants a genuinely heavy atom
                out.extend(verifier.check_exterior_tf(z.min(50).max(10))?);
            }
        }
        other => return Err(CliError::usage(format!("unknown suite `{other}`"))),
    }
    Ok(out)
}

fn report_json(r: &BoundReport) -> String {
    let samples: Vec<serde_json::Value> = r
        .samples
        .iter()
        .map(|s| {
            json!({
                "label": s.label,
                "lhs": s.lhs,
                "rhs": s.rhs,
                "margin": s.margin,
            })
        })
        .collect();
    json!({
        "claim_id": r.claim_id,
        "verdict": r.verdict.tag(),
        "worst_margin": r.worst_margin,
        "tolerance": r.tolerance,
        "settings_hash": format!("{:016x}", r.settings_hash),
        "notes": r.notes,
        "samples": samples,
    })
    .to_string()
}

/// Extract "Z=<v>" / "r=<v>" tokens from a sample label for the flat ledger.
fn label_field(label: &str, key: &str) -> String {
    for tok in label.split_whitespace() {
        if let Some(v) = tok.strip_prefix(key) {
            if let Some(rest) = v.strip_prefix('=') {
                return rest.to_string();
            }
        }
    }
    String::new()
}

pub fn cmd_verify(
    suites: &[&str],
    plan_path: Option<&Path>,
    out_dir: Option<&Path>,
    strict: bool,
) -> Result<ExitCode, CliError> {
    let (plan, plan_echo) = match plan_path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::usage(format!("cannot read plan {}: {e}", p.display())))?;
            let parsed = PlanFile::parse(&text).map_err(CliError::usage)?;
            let echo = parsed.serialize();
            (parsed.into_plan().map_err(CliError::usage)?, echo)
        }
        None => {
            let plan = SweepPlan::default();
            let echo = PlanFile {
                version: 1,
                z_list: Some(plan.z_list.clone()),
                r_probes: Some(plan.r_probes.clone()),
                nu_list: Some(plan.nu_list.clone()),
                lambda: Some(plan.lambda),
                seed: Some(plan.seed),
            }
            .serialize();
            (plan, echo)
        }
    };
    let mut verifier = Verifier::new(&plan, NumericsSettings::default(), ScfSettings::default())
        .map_err(CliError::from)?;

    let mut reports = Vec::new();
    for suite in suites {
        eprintln!("running suite `{suite}`...");
        reports.extend(run_suite(suite, &mut verifier, &plan)?);
    }

    let mut ledger = String::from("claim_id,Z,r,label,lhs,rhs,margin,verdict\n");
    let mut any_fail = false;
    let mut any_inconclusive = false;
    for r in &reports {
        eprintln!(
            "  {:<12} {:<12} worst margin {:+.3e} ({} samples)",
            r.claim_id,
            r.verdict.tag(),
            r.worst_margin,
            r.samples.len()
        );
        match r.verdict {
            Verdict::Fail => any_fail = true,
            Verdict::Inconclusive => any_inconclusive = true,
            Verdict::Pass => {}
        }
        for s in &r.samples {
            ledger.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.claim_id,
                label_field(&s.label, "Z"),
                label_field(&s.label, "r"),
                s.label.replace(',', ";"),
                s.lhs,
                s.rhs,
                s.margin,
                r.verdict.tag()
            ));
        }
    }

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        for r in &reports {
            // one JSON document per claim; suffix duplicate claim ids
            let mut path = dir.join(format!("claim_{}.json", r.claim_id.replace('.', "_")));
            let mut k = 1;
            while path.exists() {
                path = dir.join(format!("claim_{}_{k}.json", r.claim_id.replace('.', "_")));
                k += 1;
            }
            write_atomic(&path, &report_json(r))?;
        }
        write_atomic(&dir.join("ledger.csv"), &ledger)?;
        write_atomic(&dir.join("plan.json"), &plan_echo)?;
        eprintln!("wrote {} report(s) and ledger.csv to {}", reports.len(), dir.display());
    }

    println!(
        "{}",
        json!({
            "suites": suites,
            "reports": reports.len(),
            "failed": reports.iter().filter(|r| r.verdict == Verdict::Fail).count(),
            "inconclusive": reports
                .iter()
                .filter(|r| r.verdict == Verdict::Inconclusive)
                .count(),
        })
    );

    if any_fail || (strict && any_inconclusive) {
        Ok(ExitCode::FAILURE)
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
