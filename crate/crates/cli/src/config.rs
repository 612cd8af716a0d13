use std::collections::BTreeMap;

use serde::Serialize;

use crate::CliError;

pub const DEFAULT_TOLERANCES: [(&str, f64); 2] = [("certificate", 1e-6), ("agreement", 1e-9)];

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub n: usize,
    pub m: i64,
    pub degree_cap: usize,
    pub epsilon: f64,
    pub tolerances: BTreeMap<String, f64>,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            n: 2,
            m: 1,
            degree_cap: 4,
            epsilon: 0.1,
            tolerances: DEFAULT_TOLERANCES
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            samples: 1024,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, &value) in &self.tolerances {
            if !DEFAULT_TOLERANCES.iter().any(|&(k, _)| k == name) {
                return Err(CliError::Malformed(format!("unknown tolerance '{name}'")));
            }
            if !(value.is_finite() && value > 0.0) {
                return Err(CliError::Malformed(format!(
                    "tolerance '{name}' must be positive, got {value}"
                )));
            }
        }
        if self.samples < 64 || !self.samples.is_power_of_two() {
            return Err(CliError::Malformed(format!(
                "--samples must be a power of two >= 64, got {}",
                self.samples
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(CliError::Malformed(format!(
                "--epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.n == 0 {
            return Err(CliError::Malformed("--n must be at least 1".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances[name]
    }
}

/// Parses `name=value` for `--tol`.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    let value: f64 = value
        .parse()
        .map_err(|e| format!("bad value for tolerance '{name}': {e}"))?;
    Ok((name.to_string(), value))
}
