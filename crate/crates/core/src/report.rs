//! Verification reports: per-check verdicts with witnesses, rendered as
//! canonical JSON.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

/// Every statement family a check can exercise. Each report entry carries
/// exactly one of these.
pub const TAGS: &[&str] = &[
    "hopf.algebra",
    "hopf.coalgebra",
    "hopf.bialgebra",
    "hopf.antipode",
    "hopf.antipode-properties",
    "hopf.iterated-coproduct",
    "hopf.antipode-finite-order",
    "hopf.cocommutative-group-algebra",
    "hopf.rep-isos",
    "hopf.ideal",
    "voa.jacobi",
    "voa.vacuum",
    "voa.translation",
    "voa.skew-symmetry",
    "voa.virasoro",
    "voa.grading",
    "voa.spanning",
    "voa.independence",
    "action.module-voa",
    "action.invariant-subalgebra",
    "action.commuting-actions",
    "action.schur-weyl",
    "action.commutant",
    "action.zero-mode-surjectivity",
    "action.swap-identity",
    "action.group-action",
    "action.kernel-hopf-ideal",
    "action.separating-vector",
    "action.tensor-multiplicity",
    "zhu.module-algebra",
    "zhu.zero-mode-product",
    "zhu.identity",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub tag: &'static str,
    pub status: Status,
    pub reason: Option<String>,
    pub witness: Option<Value>,
    pub detail: Option<Value>,
}

impl Check {
    fn new(name: impl Into<String>, tag: &'static str, status: Status) -> Check {
        debug_assert!(TAGS.contains(&tag), "undocumented tag {tag}");
        Check { name: name.into(), tag, status, reason: None, witness: None, detail: None }
    }

    pub fn pass(name: impl Into<String>, tag: &'static str) -> Check {
        Check::new(name, tag, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, tag: &'static str, witness: Value) -> Check {
        Check { witness: Some(witness), ..Check::new(name, tag, Status::Fail) }
    }

    /// A check that could not be decided inside the weight window.
    pub fn skipped(name: impl Into<String>, tag: &'static str) -> Check {
        Check { reason: Some("window".into()), ..Check::new(name, tag, Status::Skipped) }
    }

    /// Pass or fail depending on `ok`; the witness is only kept on failure.
    pub fn verdict(name: impl Into<String>, tag: &'static str, ok: bool, witness: impl FnOnce() -> Value) -> Check {
        if ok {
            Check::pass(name, tag)
        } else {
            Check::fail(name, tag, witness())
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Check {
        self.detail = Some(detail);
        self
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Check {
        self.reason = Some(reason.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("tag".into(), json!(self.tag));
        m.insert("status".into(), serde_json::to_value(self.status).unwrap());
        if let Some(r) = &self.reason {
            m.insert("reason".into(), json!(r));
        }
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.clone());
        }
        if let Some(d) = &self.detail {
            m.insert("detail".into(), d.clone());
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub data: BTreeMap<String, Value>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.data.extend(other.data);
    }

    /// Merge `other` keeping its data under `key`.
    pub fn extend_nested(&mut self, key: &str, other: Report) {
        self.checks.extend(other.checks);
        if !other.data.is_empty() {
            self.data.insert(key.into(), Value::Object(other.data.into_iter().collect()));
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.check(name).map(|c| c.status)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("checks".into(), Value::Array(self.checks.iter().map(Check::to_json).collect()));
        if !self.data.is_empty() {
            m.insert("data".into(), Value::Object(self.data.clone().into_iter().collect()));
        }
        Value::Object(m)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
        s.push('\n');
        s
    }
}

/// Accumulates many instances of one identity into a single verdict: the
/// first failure is kept as the witness and window-skipped instances are
/// counted separately.
#[derive(Clone, Debug)]
pub struct Tally {
    name: String,
    tag: &'static str,
    checked: usize,
    failures: usize,
    skipped: usize,
    witness: Option<Value>,
}

impl Tally {
    pub fn new(name: impl Into<String>, tag: &'static str) -> Tally {
        Tally { name: name.into(), tag, checked: 0, failures: 0, skipped: 0, witness: None }
    }

    pub fn ok(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, witness: Value) {
        self.checked += 1;
        self.failures += 1;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        if ok {
            self.ok()
        } else {
            self.fail(witness())
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    /// Combine tallies computed in order (e.g. by parallel workers); the
    /// witness of the earlier tally wins.
    pub fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures += other.failures;
        self.skipped += other.skipped;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn into_checks(self) -> Vec<Check> {
        let detail = json!({ "checked": self.checked, "failures": self.failures, "skipped": self.skipped });
        let mut out = Vec::new();
        let main = if self.failures > 0 {
            Check::fail(&self.name, self.tag, self.witness.unwrap_or(Value::Null))
        } else if self.checked > 0 {
            Check::pass(&self.name, self.tag)
        } else {
            Check::skipped(&self.name, self.tag)
        };
        out.push(main.with_detail(detail));
        if self.skipped > 0 && self.checked > 0 {
            out.push(
                Check::skipped(format!("{} (outside window)", self.name), self.tag)
                    .with_detail(json!({ "count": self.skipped })),
            );
        }
        out
    }

    pub fn into_report(self, report: &mut Report) {
        for c in self.into_checks() {
            report.push(c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        assert_eq!(Report::new().render(), "{\n  \"checks\": []\n}\n");
    }

    #[test]
    fn single_pass_entry() {
        let mut r = Report::new();
        r.push(Check::pass("associativity", "hopf.algebra"));
        assert_eq!(
            r.to_json(),
            json!({"checks": [{"name": "associativity", "status": "pass", "tag": "hopf.algebra"}]})
        );
    }

    #[test]
    fn skipped_carries_window_reason() {
        let c = Check::skipped("borcherds", "voa.jacobi").to_json();
        assert_eq!(c["status"], "skipped");
        assert_eq!(c["reason"], "window");
    }

    #[test]
    fn tally_keeps_first_witness() {
        let mut t = Tally::new("x", "voa.jacobi");
        t.ok();
        t.fail(json!(1));
        t.fail(json!(2));
        t.skip();
        let checks = t.into_checks();
        assert_eq!(checks.len(), 2);
        assert_eq!(checks[0].status, Status::Fail);
        assert_eq!(checks[0].witness, Some(json!(1)));
        assert_eq!(checks[1].status, Status::Skipped);
    }

    #[test]
    fn tally_with_nothing_checked_is_skipped() {
        let mut t = Tally::new("x", "voa.jacobi");
        t.skip();
        let checks = t.into_checks();
        assert_eq!(checks.len(), 1);
        assert_eq!(checks[0].status, Status::Skipped);
    }
}
