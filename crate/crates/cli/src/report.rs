//! Results of running an instance's checks, and their text rendering.

use std::fmt::Write as _;

use abscon_core::report::{RuleReport, Verdict, Witness};
use serde::{Deserialize, Serialize};

use crate::checks::{run_check, CheckSpec, Expect};
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub check: String,
    pub status: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<RuleReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expect>,
    /// Where the outcome differs from the expectation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub status: Verdict,
    pub checks: Vec<CheckEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Runs one check and judges it against its expectation, if any.
pub fn run_entry(inst: &Instance, spec: &CheckSpec) -> CheckEntry {
    let mut entry = CheckEntry {
        name: spec.label(),
        check: spec.kind.tag().to_string(),
        status: Verdict::Pass,
        report: None,
        error: None,
        expected: spec.expect.clone(),
        mismatches: Vec::new(),
    };
    match run_check(inst, spec) {
        Ok(mut r) => {
            match &spec.expect {
                Some(e) => {
                    entry.mismatches = e.mismatches(&r);
                    entry.status = if entry.mismatches.is_empty() { Verdict::Pass } else { Verdict::Fail };
                    if entry.status == Verdict::Fail && r.witnesses.is_empty() {
                        r.witnesses.push(Witness::new(format!("unexpected outcome: {}", entry.mismatches.join("; "))));
                    }
                }
                None => entry.status = r.verdict,
            }
            entry.report = Some(r);
        }
        Err(err) => {
            let message = err.to_string();
            let wanted = spec.expect.as_ref().and_then(|e| e.error.as_deref());
            entry.status = match wanted {
                Some(w) if message.contains(w) => Verdict::Pass,
                Some(w) => {
                    entry.mismatches.push(format!("expected an error containing `{w}`"));
                    Verdict::Fail
                }
                None => Verdict::Fail,
            };
            entry.error = Some(message);
        }
    }
    entry
}

/// Fails if any check fails; not applicable if no check passes.
pub fn overall(entries: &[CheckEntry]) -> Verdict {
    if entries.iter().any(|e| e.status == Verdict::Fail) {
        Verdict::Fail
    } else if entries.iter().any(|e| e.status == Verdict::Pass) || entries.is_empty() {
        Verdict::Pass
    } else {
        Verdict::NotApplicable
    }
}

pub fn run_instance(inst: &Instance) -> Report {
    let checks: Vec<CheckEntry> = inst.checks.iter().map(|c| run_entry(inst, c)).collect();
    Report { scenario: inst.name.clone(), status: overall(&checks), checks, elapsed_ms: None }
}

pub fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::NotApplicable => "n/a",
    }
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.scenario, verdict_word(self.status));
        for e in &self.checks {
            let _ = writeln!(out, "  [{}] {} ({})", verdict_word(e.status), e.name, e.check);
            if let Some(r) = &e.report {
                let _ = writeln!(out, "      hypothesis {:?}, conclusion {:?}, verdict {}", r.hypothesis, r.conclusion, verdict_word(r.verdict));
                for (k, v) in &r.observations {
                    let _ = writeln!(out, "      {k} = {v}");
                }
                for w in &r.witnesses {
                    let _ = write!(out, "      witness: {}", w.what);
                    if !w.functions.is_empty() {
                        let _ = write!(out, "; functions {}", w.functions.join(", "));
                    }
                    if !w.points.is_empty() {
                        let _ = write!(out, "; points {}", w.points.join(", "));
                    }
                    out.push('\n');
                }
            }
            if let Some(err) = &e.error {
                let _ = writeln!(out, "      error: {err}");
            }
            for m in &e.mismatches {
                let _ = writeln!(out, "      mismatch: {m}");
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed {ms} ms");
        }
        out
    }
}
