use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Echo of the configuration a report was produced with.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub q: f64,
    #[serde(rename = "N")]
    pub trunc: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub ms: f64,
}

/// Result of a verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub config: ConfigEcho,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { suite: suite.into(), config: ConfigEcho::default(), checks: Vec::new(), pass: true }
    }

    pub fn with_config(mut self, config: ConfigEcho) -> Self {
        self.config = config;
        self
    }

    /// Records a check; it passes when `residual <= tol` (NaN never passes).
    pub fn push_timed(&mut self, name: impl Into<String>, residual: f64, tol: f64, ms: f64) {
        // normalizes -0.0
        let residual = residual + 0.0;
        let pass = residual <= tol;
        self.pass &= pass;
        self.checks.push(CheckRecord { name: name.into(), residual, tol, pass, ms });
    }

    /// Runs `f`, which returns a residual, and records it with its wall time.
    pub fn run(&mut self, name: impl Into<String>, tol: f64, f: impl FnOnce() -> f64) {
        let start = Instant::now();
        let residual = f();
        self.push_timed(name, residual, tol, start.elapsed().as_secs_f64() * 1e3);
    }

    /// Records a boolean outcome as residual 0 (true) or 1 (false) against tolerance 0.
    pub fn push_bool(&mut self, name: impl Into<String>, ok: bool) {
        self.push_timed(name, if ok { 0.0 } else { 1.0 }, 0.0, 0.0);
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.pass &= other.pass;
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregate_pass_flag() {
        let mut r = CheckReport::new("demo");
        r.push_timed("ok", 0.0, 1e-12, 0.1);
        assert!(r.pass);
        r.push_timed("bad", f64::NAN, 1.0, 0.0);
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn json_schema_keys() {
        let r = CheckReport::new("vacuum");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["suite", "config", "checks", "pass"] {
            assert!(v.get(key).is_some());
        }
        assert!(v["config"].get("N").is_some());
    }
}
