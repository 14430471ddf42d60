use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// One named check with its sweep size and any failure witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i32>,
    pub instances: usize,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, instances: usize, witnesses: Vec<String>) -> Self {
        CheckResult {
            name: name.into(),
            degree: None,
            instances,
            passed: witnesses.is_empty(),
            witnesses,
        }
    }

    pub fn single(name: impl Into<String>, instances: usize, witness: Option<String>) -> Self {
        Self::new(name, instances, witness.into_iter().collect())
    }
}

/// The structured result of one command. Contains nothing run-dependent, so
/// identical inputs serialize to identical bytes.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<CheckResult>,
    pub data: Value,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            command,
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            data: Value::Null,
            passed: true,
        }
    }

    pub fn digest(&mut self, name: &str, bytes: &[u8]) {
        self.inputs
            .insert(name.to_string(), hex::encode(Sha256::digest(bytes)));
    }

    pub fn push(&mut self, check: CheckResult) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Human-readable form; `summary` lines come from the command.
    pub fn to_text(&self, summary: &[String], millis: u128) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pqc {}", self.command.join(" "));
        for (name, digest) in &self.inputs {
            let _ = writeln!(out, "input {name} sha256 {digest}");
        }
        for line in summary {
            let _ = writeln!(out, "{line}");
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let degree = c.degree.map(|d| format!(" degree {d}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{status} {}{degree} ({} instances)",
                c.name, c.instances
            );
            for w in c.witnesses.iter().take(5) {
                let _ = writeln!(out, "    {w}");
            }
            if c.witnesses.len() > 5 {
                let _ = writeln!(out, "    ... {} more", c.witnesses.len() - 5);
            }
        }
        let mut names: Vec<&str> = self.checks.iter().map(|c| c.name.as_str()).collect();
        names.dedup();
        let failed: Vec<&str> = names
            .iter()
            .copied()
            .filter(|n| self.checks.iter().any(|c| c.name == *n && !c.passed))
            .collect();
        let _ = writeln!(
            out,
            "result: {} ({} of {} checks pass) in {millis} ms",
            if self.passed { "pass" } else { "fail" },
            names.len() - failed.len(),
            names.len()
        );
        out
    }
}
