//! Verification pipeline and persistent reports.
//!
//! Every report is versioned JSON (`schema_version` "1") and is loaded with
//! unknown fields rejected. Apart from `runtime_ms`, a report depends only on
//! its inputs, never on the thread count.

mod demo;
mod io;
mod scaling;
mod verify;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use demo::run_demo_quadratic;
pub use io::{
    export_json, export_signal, export_spectrum, load_json, load_signal, signal_from_json,
    signal_to_json,
};
pub use scaling::{run_scaling, ScalingReport, ScalingRow, SCALING_RATIO_BAND};
pub use verify::{run_verify, sampling_deviation, VERIFY_MIN_MODULUS};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    Verify,
    DemoQuad,
}

/// How `measured[0]` is compared with `bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    AtMost,
    AtLeast,
    /// No numeric bound; `passed` is an exact predicate on `measured`.
    Exact,
    /// Recorded only; always passes.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub claim_ref: String,
    pub measured: Vec<f64>,
    pub bound: Option<f64>,
    pub relation: Relation,
    pub passed: bool,
    pub skipped: bool,
    /// The bound is implied by trivial size estimates at this modulus, so the
    /// check cannot fail; the measured value is what carries information.
    #[serde(rename = "vacuous_at_this_N")]
    pub vacuous_at_this_n: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub runtime_ms: u64,
}

impl Check {
    fn base(name: &str, claim_ref: &str, measured: Vec<f64>, relation: Relation) -> Self {
        Check {
            name: name.into(),
            claim_ref: claim_ref.into(),
            measured,
            bound: None,
            relation,
            passed: false,
            skipped: false,
            vacuous_at_this_n: false,
            note: None,
            runtime_ms: 0,
        }
    }

    pub fn at_most(name: &str, claim_ref: &str, measured: Vec<f64>, bound: f64) -> Self {
        let passed = measured.first().is_some_and(|&v| v <= bound);
        Check { bound: Some(bound), passed, ..Self::base(name, claim_ref, measured, Relation::AtMost) }
    }

    pub fn at_least(name: &str, claim_ref: &str, measured: Vec<f64>, bound: f64) -> Self {
        let passed = measured.first().is_some_and(|&v| v >= bound);
        Check { bound: Some(bound), passed, ..Self::base(name, claim_ref, measured, Relation::AtLeast) }
    }

    pub fn exact(name: &str, claim_ref: &str, measured: Vec<f64>, passed: bool) -> Self {
        Check { passed, ..Self::base(name, claim_ref, measured, Relation::Exact) }
    }

    pub fn info(name: &str, claim_ref: &str, measured: Vec<f64>) -> Self {
        Check { passed: true, ..Self::base(name, claim_ref, measured, Relation::Info) }
    }

    pub fn failed(name: &str, claim_ref: &str, note: String) -> Self {
        Check { note: Some(note), ..Self::base(name, claim_ref, vec![], Relation::Exact) }
    }

    pub fn skipped(name: &str, claim_ref: &str) -> Self {
        Check {
            skipped: true,
            note: Some("an upstream construction failed".into()),
            ..Self::base(name, claim_ref, vec![], Relation::Exact)
        }
    }

    /// Marks the check vacuous when its bound is at least `trivial`, a
    /// ceiling that holds for any input of the right shape.
    pub fn vacuous_above(mut self, trivial: f64) -> Self {
        self.vacuous_at_this_n = self.bound.is_some_and(|b| b >= trivial);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub schema_version: String,
    pub kind: ReportKind,
    pub modulus: u64,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(kind: ReportKind, modulus: u64, seed: u64) -> Self {
        VerificationReport { schema_version: SCHEMA_VERSION.into(), kind, modulus, seed, checks: vec![] }
    }

    /// Runs `f`, stamps its wall time and appends the check.
    pub(crate) fn timed(&mut self, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let mut check = f();
        check.runtime_ms = start.elapsed().as_millis() as u64;
        self.checks.push(check);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// True iff every non-skipped check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.skipped || c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.skipped && !c.passed)
    }

    /// The report with every `runtime_ms` zeroed, for reproducibility checks.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.checks.iter_mut().for_each(|c| c.runtime_ms = 0);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(Check::at_most("a", "x", vec![1.0], 1.0).passed);
        assert!(!Check::at_most("a", "x", vec![1.5], 1.0).passed);
        assert!(Check::at_least("a", "x", vec![1.5], 1.0).passed);
        assert!(!Check::at_least("a", "x", vec![], 1.0).passed);
        assert!(Check::info("a", "x", vec![]).passed);
        assert!(Check::at_most("a", "x", vec![0.1], 47.0).vacuous_above(4.0).vacuous_at_this_n);
        assert!(!Check::at_most("a", "x", vec![0.1], 0.2).vacuous_above(4.0).vacuous_at_this_n);
    }

    #[test]
    fn skipped_checks_do_not_fail_the_report() {
        let mut r = VerificationReport::new(ReportKind::Verify, 5, 0);
        r.checks.push(Check::info("a", "x", vec![1.0]));
        r.checks.push(Check::skipped("b", "y"));
        assert!(r.passed());
        r.checks.push(Check::failed("c", "z", "boom".into()));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn json_field_names() {
        let c = Check::at_most("a", "x", vec![0.5], 1.0);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["vacuous_at_this_N"], false);
        assert_eq!(v["relation"], "at-most");
        assert!(v.get("note").is_none());
        let mut v = serde_json::to_value(VerificationReport::new(ReportKind::Verify, 7, 1)).unwrap();
        v["extra"] = 1.into();
        assert!(serde_json::from_value::<VerificationReport>(v).is_err());
    }
}
