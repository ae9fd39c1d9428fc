//! Schema-versioned JSON report envelopes.
//!
//! All volatile data (wall-clock timestamps, elapsed seconds) is
//! isolated in the single `timing` record, so two runs with the same
//! configuration and seed produce byte-identical envelopes once that
//! record is masked.

use crate::config::RunConfig;
use serde::Serialize;
use std::time::{SystemTime, UNIX_EPOCH};

pub const SCHEMA: &str = "lie-eigenlab-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckResult {
    /// Pass when `measured` is below `tolerance`.
    pub fn bound(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            tolerance,
            passed: measured < tolerance,
            detail: String::new(),
        }
    }

    /// Pass when `measured` exceeds `tolerance` (floors, gaps).
    pub fn floor(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            tolerance,
            passed: measured > tolerance,
            detail: String::new(),
        }
    }

    /// Pass/fail decided by the caller.
    pub fn stated(name: impl Into<String>, measured: f64, tolerance: f64, passed: bool) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            tolerance,
            passed,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Timing {
    pub started_unix_seconds: u64,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportEnvelope {
    pub schema: &'static str,
    pub artifact_version: &'static str,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
    pub verdict: String,
    pub timing: Timing,
}

impl ReportEnvelope {
    pub fn new(config: RunConfig, checks: Vec<CheckResult>, warnings: Vec<String>) -> Self {
        let verdict = if checks.is_empty() {
            "inconclusive".to_string()
        } else if checks.iter().all(|c| c.passed) {
            "pass".to_string()
        } else {
            "fail".to_string()
        };
        ReportEnvelope {
            schema: SCHEMA,
            artifact_version: env!("CARGO_PKG_VERSION"),
            config,
            checks,
            warnings,
            verdict,
            timing: Timing::default(),
        }
    }

    pub fn stamp(&mut self, started: SystemTime, elapsed_seconds: f64) {
        self.timing = Timing {
            started_unix_seconds: started
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            elapsed_seconds,
        };
    }

    pub fn all_passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// JSON with the volatile timing record zeroed; used for
    /// byte-identity comparisons across reruns.
    pub fn canonical_json(&self) -> String {
        let mut masked = self.clone();
        masked.timing = Timing::default();
        masked.to_json()
    }
}
