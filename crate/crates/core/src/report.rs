//! Outcome records for rule checks.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisStatus {
    Holds,
    Fails,
    NotChecked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConclusionStatus {
    Equal,
    StrictInclusion,
    Violated,
}

/// Whether a check confirms the statement it instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    NotApplicable,
    Fail,
}

/// Functions and points exhibiting strictness or a violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub what: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
}

impl Witness {
    pub fn new(what: impl Into<String>) -> Witness {
        Witness { what: what.into(), functions: Vec::new(), points: Vec::new() }
    }

    pub fn function(mut self, f: impl Into<String>) -> Witness {
        self.functions.push(f.into());
        self
    }

    pub fn point(mut self, p: impl Into<String>) -> Witness {
        self.points.push(p.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleReport {
    pub rule: String,
    pub hypothesis: HypothesisStatus,
    pub conclusion: ConclusionStatus,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub observations: BTreeMap<String, String>,
}

impl RuleReport {
    /// A report for an unconditional statement: it passes unless violated.
    pub fn unconditional(rule: impl Into<String>, conclusion: ConclusionStatus) -> RuleReport {
        let verdict = if conclusion == ConclusionStatus::Violated { Verdict::Fail } else { Verdict::Pass };
        RuleReport {
            rule: rule.into(),
            hypothesis: HypothesisStatus::NotChecked,
            conclusion,
            verdict,
            witnesses: Vec::new(),
            observations: BTreeMap::new(),
        }
    }

    /// A report for a conditional statement. A violated conclusion fails
    /// only when the hypothesis holds; otherwise the check does not apply.
    pub fn conditional(rule: impl Into<String>, hypothesis: bool, conclusion: ConclusionStatus) -> RuleReport {
        let verdict = match (hypothesis, conclusion) {
            (true, ConclusionStatus::Violated) => Verdict::Fail,
            (true, _) => Verdict::Pass,
            (false, _) => Verdict::NotApplicable,
        };
        RuleReport {
            rule: rule.into(),
            hypothesis: if hypothesis { HypothesisStatus::Holds } else { HypothesisStatus::Fails },
            conclusion,
            verdict,
            witnesses: Vec::new(),
            observations: BTreeMap::new(),
        }
    }

    pub fn with_witness(mut self, w: Witness) -> RuleReport {
        self.witnesses.push(w);
        self
    }

    pub fn observe(mut self, key: impl Into<String>, value: impl ToString) -> RuleReport {
        self.observations.insert(key.into(), value.to_string());
        self
    }

    pub fn set_observation(&mut self, key: impl Into<String>, value: impl ToString) {
        self.observations.insert(key.into(), value.to_string());
    }

    /// Marks the report failed regardless of the hypothesis, for parts of a
    /// statement that hold unconditionally.
    pub fn fail(mut self) -> RuleReport {
        self.conclusion = ConclusionStatus::Violated;
        self.verdict = Verdict::Fail;
        self
    }

    /// Marks the report failed, keeping its conclusion.
    pub fn reject(mut self) -> RuleReport {
        self.verdict = Verdict::Fail;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

impl fmt::Display for RuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "n/a",
        };
        write!(f, "[{verdict}] {} (hypothesis {:?}, conclusion {:?})", self.rule, self.hypothesis, self.conclusion)
    }
}

/// Equal, strictly included, or not included: the relation of a computed
/// set to a set it must contain.
pub fn inclusion_status<T: Ord>(
    small: &std::collections::BTreeSet<T>,
    big: &std::collections::BTreeSet<T>,
) -> ConclusionStatus {
    if small == big {
        ConclusionStatus::Equal
    } else if small.is_subset(big) {
        ConclusionStatus::StrictInclusion
    } else {
        ConclusionStatus::Violated
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let r = RuleReport::conditional("r", false, ConclusionStatus::Violated);
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(r.passed());
        let r = RuleReport::conditional("r", true, ConclusionStatus::Violated);
        assert!(!r.passed());
        assert!(!RuleReport::unconditional("r", ConclusionStatus::Equal).fail().passed());
    }

    #[test]
    fn json_round_trip() {
        let r = RuleReport::unconditional("moreau", ConclusionStatus::Equal)
            .with_witness(Witness::new("member").function("x").point("1"))
            .observe("members", 3);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"conclusion\":\"equal\""));
        let back: RuleReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
