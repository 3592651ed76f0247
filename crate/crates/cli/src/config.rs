//! Plan/config file handling: versioned JSON, unknown keys rejected.

use serde::{Deserialize, Serialize};

use atomlab_core::verify::SweepPlan;

/// On-disk sweep plan. Field defaults mirror the built-in plan; unknown
/// keys are rejected so a typo cannot silently change a report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub version: u32,
    #[serde(default)]
    pub z_list: Option<Vec<u32>>,
    #[serde(default)]
    pub r_probes: Option<Vec<f64>>,
    #[serde(default)]
    pub nu_list: Option<Vec<f64>>,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl PlanFile {
    pub fn parse(text: &str) -> Result<PlanFile, String> {
        let plan: PlanFile =
            serde_json::from_str(text).map_err(|e| format!("malformed plan: {e}"))?;
        if plan.version != 1 {
            return Err(format!("unsupported plan version {}", plan.version));
        }
        Ok(plan)
    }

    /// Canonical serialized form; `parse` then `serialize` is idempotent.
    pub fn serialize(&self) -> String {
        serde_json::to_string(self).expect("plan serialization cannot fail")
    }

    pub fn into_plan(self) -> Result<SweepPlan, String> {
        let mut plan = SweepPlan::default();
        if let Some(z) = self.z_list {
            plan.z_list = z;
        }
        if let Some(r) = self.r_probes {
            plan.r_probes = r;
        }
        if let Some(nu) = self.nu_list {
            plan.nu_list = nu;
        }
        if let Some(l) = self.lambda {
            plan.lambda = l;
        }
        if let Some(s) = self.seed {
            plan.seed = s;
        }
        plan.validate().map_err(|e| e.to_string())?;
        Ok(plan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_idempotent() {
        let text = r#"{"version":1,"z_list":[2,10],"lambda":0.5}"#;
        let once = PlanFile::parse(text).unwrap().serialize();
        let twice = PlanFile::parse(&once).unwrap().serialize();
        assert_eq!(once, twice);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(PlanFile::parse(r#"{"version":1,"zlist":[2]}"#).is_err());
    }

    #[test]
    fn empty_z_list_rejected() {
        let plan = PlanFile::parse(r#"{"version":1,"z_list":[]}"#).unwrap();
        assert!(plan.into_plan().is_err());
    }

    #[test]
    fn wrong_version_rejected() {
        assert!(PlanFile::parse(r#"{"version":2}"#).is_err());
    }
}
