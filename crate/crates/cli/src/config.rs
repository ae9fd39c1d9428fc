//! Run configuration: a flat key-value file with `[sections]` provides
//! defaults, command-line flags override field by field.

use crate::{CliError, CliResult};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;

/// Effective configuration of one run; echoed verbatim into the report
/// envelope.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub group: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gen_a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gen_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly_p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly_q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_matrix: Option<String>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub h_step: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    pub format: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub only: Option<String>,
    /// Spot-check count for sample-manifold curvature diagnostics.
    pub spot_checks: usize,
    /// Inject a stray member before verification (testing hook).
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub inject_defect: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: String::new(),
            group: "su".into(),
            n: 3,
            family: None,
            s: None,
            gen_a: None,
            gen_b: None,
            poly_p: None,
            poly_q: None,
            h_matrix: None,
            samples: 50,
            seed: 0,
            tol: 1e-8,
            h_step: 1e-3,
            out: None,
            format: vec!["json".into()],
            only: None,
            spot_checks: 5,
            inject_defect: false,
        }
    }
}

impl RunConfig {
    /// Validate the invariants shared by every command.
    pub fn validate(&self, randomized: bool, seed_given: bool) -> CliResult<()> {
        if randomized && !seed_given {
            return Err(CliError::config(
                "a --seed is mandatory for randomized commands",
            ));
        }
        if self.n == 0 {
            return Err(CliError::config("n must be positive"));
        }
        if self.tol <= 0.0 || !self.tol.is_finite() {
            return Err(CliError::config("tol must be positive"));
        }
        if self.h_step <= 0.0 || !self.h_step.is_finite() {
            return Err(CliError::config("h-step must be positive"));
        }
        match self.group.as_str() {
            "su" | "so" | "sp" => Ok(()),
            other => Err(CliError::config(format!(
                "unknown group family '{other}' (su | so | sp)"
            ))),
        }
    }

    pub fn group_spec(&self) -> CliResult<lie_eigenlab_core::group::GroupSpec> {
        use lie_eigenlab_core::group::GroupSpec;
        let spec = match self.group.as_str() {
            "su" => GroupSpec::su(self.n),
            "so" => GroupSpec::so(self.n),
            "sp" => GroupSpec::sp(self.n),
            other => return Err(CliError::config(format!("unknown group family '{other}'"))),
        };
        spec.map_err(CliError::setup)
    }
}

/// Parsed key-value file: `section.key -> value`.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        let mut section = String::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = name.trim().to_string();
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!(
                    "config line {} is not 'key = value'",
                    lineno + 1
                )));
            };
            let full = if section.is_empty() {
                key.trim().to_string()
            } else {
                format!("{section}.{}", key.trim())
            };
            values.insert(full, value.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    /// Look a key up in `run.` scope first, then unscoped.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.values
            .get(&format!("run.{key}"))
            .or_else(|| self.values.get(key))
            .map(String::as_str)
    }

    pub fn get_parse<T: std::str::FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                CliError::config(format!("config key '{key}' has unparsable value '{raw}'"))
            }),
        }
    }
}
