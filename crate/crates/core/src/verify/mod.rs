//! Desk-scale empirical checks of the headline bounds, swept over nuclear
//! charges and probe radii, emitting machine-readable [`BoundReport`]s.
//!
//! Limits cannot be certified numerically; "bounded in Z" claims are
//! operationalized as no-positive-trend (Kendall tau) plus a cap of twice
//! the median, and every report records the surrogate it used. All
//! randomness is seeded, so a report is a pure function of its plan and
//! settings.

mod checks;

pub use checks::Verifier;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Parameter sweep driving the verification checks.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub z_list: Vec<u32>,
    /// Probe radii (bohr).
    pub r_probes: Vec<f64>,
    /// Exterior electron counts for the radius checks.
    pub nu_list: Vec<f64>,
    /// Localization parameter of the exterior estimate, in (0, 1).
    pub lambda: f64,
    /// Seed for the randomized suites.
    pub seed: u64,
}

impl Default for SweepPlan {
    fn default() -> Self {
        // log-spaced probes over [0.25, 16]
        let m = 17;
        let r_probes = (0..m)
            .map(|i| 0.25 * (64.0f64).powf(i as f64 / (m - 1) as f64))
            .collect();
        SweepPlan {
            z_list: alloc::vec![2, 6, 10, 18, 36, 54, 86],
            r_probes,
            nu_list: alloc::vec![1.0, 2.0, 4.0, 8.0, 16.0],
            lambda: 0.5,
            seed: 0x5eed_a701,
        }
    }
}

impl SweepPlan {
    pub fn validate(&self) -> Result<()> {
        if self.z_list.is_empty() {
            return Err(Error::invalid("sweep plan has no nuclear charges"));
        }
        if self.z_list.iter().any(|&z| z == 0) {
            return Err(Error::invalid("nuclear charges must be positive"));
        }
        if self.r_probes.iter().any(|&r| !(r > 0.0)) || self.nu_list.iter().any(|&n| !(n > 0.0))
        {
            return Err(Error::invalid("probes must be positive"));
        }
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return Err(Error::invalid("lambda must lie in (0, 1)"));
        }
        Ok(())
    }

    /// Canonical text form feeding the settings hash.
    pub fn canonical_string(&self) -> String {
        let mut s = String::from("plan v1;z=");
        for z in &self.z_list {
            s.push_str(&format!("{z},"));
        }
        s.push_str(";r=");
        for r in &self.r_probes {
            s.push_str(&format!("{r},"));
        }
        s.push_str(";nu=");
        for n in &self.nu_list {
            s.push_str(&format!("{n},"));
        }
        s.push_str(&format!(";lambda={};seed={}", self.lambda, self.seed));
        s
    }
}

/// Kendall rank correlation (tau-b, tie-corrected) of `ys` against their
/// index order. Positive means increasing trend.
pub fn kendall_tau(ys: &[f64]) -> f64 {
    let n = ys.len();
    if n < 2 {
        return 0.0;
    }
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    let mut ties = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let d = ys[j] - ys[i];
            if d > 0.0 {
                concordant += 1;
            } else if d < 0.0 {
                discordant += 1;
            } else {
                ties += 1;
            }
        }
    }
    let pairs = (n * (n - 1) / 2) as i64;
    let denom = (((pairs) as f64) * ((pairs - ties) as f64)).sqrt();
    if denom == 0.0 {
        return 0.0;
    }
    (concordant - discordant) as f64 / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kendall_tau_extremes() {
        assert_eq!(kendall_tau(&[1.0, 2.0, 3.0, 4.0]), 1.0);
        assert_eq!(kendall_tau(&[4.0, 3.0, 2.0, 1.0]), -1.0);
        assert!(kendall_tau(&[1.0, 1.0, 1.0]).abs() < 1e-12);
        let mixed = kendall_tau(&[1.0, 3.0, 2.0, 4.0]);
        assert!(mixed > 0.0 && mixed < 1.0);
    }

    #[test]
    fn default_plan_is_valid() {
        let p = SweepPlan::default();
        p.validate().unwrap();
        assert_eq!(p.z_list, alloc::vec![2, 6, 10, 18, 36, 54, 86]);
        assert!((p.r_probes[0] - 0.25).abs() < 1e-12);
        assert!((p.r_probes.last().unwrap() - 16.0).abs() < 1e-12);
    }

    #[test]
    fn plan_validation_rejects_bad_input() {
        let mut p = SweepPlan::default();
        p.z_list.clear();
        assert!(p.validate().is_err());
        let mut p = SweepPlan::default();
        p.lambda = 1.0;
        assert!(p.validate().is_err());
    }
}
