//! Command results in a key-value text form and a JSON form.

use std::fmt::Write;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Free-form detail, e.g. how many instances were examined.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    /// When `false` the check is reported but does not affect the verdict.
    #[serde(skip_serializing_if = "is_true")]
    pub counts: bool,
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    /// `sha256:` of the workspace text and the command arguments.
    pub inputs: String,
    pub verdict: Verdict,
    pub budgets: Vec<(String, String)>,
    pub results: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub witnesses: Vec<String>,
    /// Objects created by the command, in workspace syntax.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    format!("sha256:{:x}", h.finalize())
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: String) -> Self {
        Report {
            command: command.into(),
            inputs,
            verdict: Verdict::Pass,
            budgets: Vec::new(),
            results: Vec::new(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            output: None,
            timing_ms: None,
        }
    }

    pub fn budget(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.budgets.push((key.into(), value.to_string()));
        self
    }

    pub fn result(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.results.push((key.into(), value.to_string()));
        self
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            counts: true,
        });
        if !passed {
            self.verdict = Verdict::Fail;
        }
        self
    }

    /// A check shown for information only.
    pub fn note(
        &mut self,
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            counts: false,
        });
        self
    }

    pub fn witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "inputs: {}", self.inputs);
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        );
        for (k, v) in &self.budgets {
            let _ = writeln!(out, "budget.{k}: {v}");
        }
        for (k, v) in &self.results {
            let _ = writeln!(out, "result.{k}: {v}");
        }
        for c in &self.checks {
            let status = match (c.passed, c.counts) {
                (true, true) => "pass",
                (false, true) => "FAIL",
                (true, false) => "pass (informational)",
                (false, false) => "fail (informational)",
            };
            let _ = write!(out, "check.{}: {status}", c.name);
            if !c.detail.is_empty() {
                let _ = write!(out, " -- {}", c.detail);
            }
            out.push('\n');
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "witness: {w}");
        }
        if let Some(text) = &self.output {
            out.push_str("output:\n");
            for line in text.lines() {
                let _ = writeln!(out, "  | {line}");
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "timing_ms: {ms}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_sets_the_verdict() {
        let mut r = Report::new("x", digest(&[b"a"]));
        r.check("one", true, "");
        assert!(r.passed());
        r.note("two", false, "ignored");
        assert!(r.passed());
        r.check("three", false, "broken");
        assert!(!r.passed());
        let text = r.to_text();
        assert!(text.contains("check.three: FAIL -- broken\n"));
        assert!(text.contains("check.two: fail (informational) -- ignored\n"));
    }

    #[test]
    fn digest_separates_parts() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert!(digest(&[]).starts_with("sha256:"));
    }

    #[test]
    fn json_shape() {
        let mut r = Report::new("check-algebra A", digest(&[b""]));
        r.result("size", 2).budget("depth", 2);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["results"][0][0], "size");
        assert!(v.get("timing_ms").is_none());
    }
}
