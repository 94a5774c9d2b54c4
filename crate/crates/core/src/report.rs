//! Certificate reports emitted by every checker.
//!
//! A report is deterministic: it never contains timestamps, and its facts are
//! kept in a sorted map so that serialization is byte-stable. Timing lives in
//! [`CertReport::elapsed`], which is skipped by serde.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "inconclusive-at-bound")]
    Inconclusive,
    #[serde(rename = "unsupported")]
    Unsupported,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Unsupported => "UNSUPPORTED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub label: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertReport {
    pub check: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subreports: Vec<CertReport>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl CertReport {
    /// A passing report; checks downgrade it with [`CertReport::fail`] etc.
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            verdict: Verdict::Pass,
            bound: None,
            witnesses: Vec::new(),
            facts: BTreeMap::new(),
            notes: Vec::new(),
            subreports: Vec::new(),
            elapsed: None,
        }
    }

    pub fn with_bound(mut self, bound: u32) -> Self {
        self.bound = Some(bound);
        self
    }

    /// Records a failure. A failing report always carries a witness.
    pub fn fail(&mut self, label: impl Into<String>, detail: impl Into<String>) {
        self.verdict = Verdict::Fail;
        self.witnesses.push(Witness {
            label: label.into(),
            detail: detail.into(),
        });
    }

    /// Marks the report inconclusive at `bound` unless it already failed.
    pub fn inconclusive(&mut self, bound: u32, reason: impl Into<String>) {
        self.bound = Some(bound);
        self.notes.push(reason.into());
        if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Inconclusive;
        }
    }

    pub fn unsupported(&mut self, reason: impl Into<String>) {
        self.notes.push(reason.into());
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Unsupported;
        }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("fact is serializable");
        self.facts.insert(key.into(), value);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Attaches a sub-check. A non-passing sub-check makes this report fail,
    /// with a witness pointing at the sub-check.
    pub fn absorb(&mut self, sub: CertReport) {
        if sub.verdict != Verdict::Pass {
            self.fail(
                format!("sub-check {}", sub.check),
                format!("verdict {}", sub.verdict),
            );
        }
        self.subreports.push(sub);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed = Some(start.elapsed());
        self
    }

    /// Looks up a fact by key, also searching sub-reports depth-first.
    pub fn find_fact(&self, key: &str) -> Option<&Value> {
        self.facts
            .get(key)
            .or_else(|| self.subreports.iter().find_map(|s| s.find_fact(key)))
    }

    /// Human-readable multi-line rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        use std::fmt::Write;
        let pad = "  ".repeat(depth);
        let bound = self
            .bound
            .map(|b| format!(" (degree <= {b})"))
            .unwrap_or_default();
        let _ = writeln!(out, "{pad}[{}] {}{}", self.verdict, self.check, bound);
        for (k, v) in &self.facts {
            let _ = writeln!(out, "{pad}    {k}: {}", render_value(v));
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "{pad}    witness {}: {}", w.label, w.detail);
        }
        for n in &self.notes {
            let _ = writeln!(out, "{pad}    note: {n}");
        }
        for s in &self.subreports {
            s.render_into(out, depth + 1);
        }
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
