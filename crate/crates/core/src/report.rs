//! Machine-readable outcome of a bound check.

use alloc::string::String;
use alloc::vec::Vec;

/// Outcome of a theorem check against its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The check could not be carried out meaningfully (solver failure,
    /// box-sensitive spectrum, precondition not met).
    Inconclusive,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// One evaluation point of a bound: `margin = rhs - lhs` for inequalities
/// of the form `lhs <= rhs`, so negative margins are violations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    /// Parameter point, e.g. "Z=10 r=2.0".
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl Sample {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Sample {
            label: label.into(),
            lhs,
            rhs,
            margin: rhs - lhs,
        }
    }
}

/// Aggregated outcome of one claim over a sweep of sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub claim_id: String,
    pub samples: Vec<Sample>,
    pub worst_margin: f64,
    pub verdict: Verdict,
    /// Tolerance the verdict was judged against.
    pub tolerance: f64,
    /// Hash of the plan and solver settings that produced the report.
    pub settings_hash: u64,
    pub notes: String,
}

impl BoundReport {
    /// Judge `samples` against `tolerance`: pass iff the worst margin is
    /// above `-tolerance`.
    pub fn from_samples(
        claim_id: impl Into<String>,
        samples: Vec<Sample>,
        tolerance: f64,
        settings_hash: u64,
    ) -> Self {
        let worst = samples
            .iter()
            .map(|s| s.margin)
            .fold(f64::INFINITY, f64::min);
        let worst_margin = if worst.is_finite() { worst } else { 0.0 };
        let verdict = if samples.is_empty() {
            Verdict::Inconclusive
        } else if worst_margin >= -tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        BoundReport {
            claim_id: claim_id.into(),
            samples,
            worst_margin,
            verdict,
            tolerance,
            settings_hash,
            notes: String::new(),
        }
    }

    pub fn inconclusive(
        claim_id: impl Into<String>,
        notes: impl Into<String>,
        settings_hash: u64,
    ) -> Self {
        BoundReport {
            claim_id: claim_id.into(),
            samples: Vec::new(),
            worst_margin: 0.0,
            verdict: Verdict::Inconclusive,
            tolerance: 0.0,
            settings_hash,
            notes: notes.into(),
        }
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    /// Force a verdict (used by report-only checks that never fail).
    pub fn informational(mut self) -> Self {
        self.verdict = Verdict::Pass;
        self
    }
}

/// FNV-1a over the canonical settings string; used to stamp reports.
pub fn settings_hash(text: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn verdict_matches_worst_margin_against_tolerance() {
        let s = vec![Sample::new("a", 1.0, 2.0), Sample::new("b", 2.0, 1.5)];
        let r = BoundReport::from_samples("x", s.clone(), 0.6, 0);
        assert_eq!(r.worst_margin, -0.5);
        assert_eq!(r.verdict, Verdict::Pass);
        let r = BoundReport::from_samples("x", s, 0.4, 0);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn empty_sample_set_is_inconclusive() {
        let r = BoundReport::from_samples("x", vec![], 1.0, 0);
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }
}
