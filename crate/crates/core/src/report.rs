//! Check records shared by the verification suites and the CLI.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A reported mathematical observation; never a failure.
    Finding,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Finding => "finding",
            Status::NotApplicable => "not-applicable",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub inputs: String,
    pub computed: String,
    pub expected: String,
    pub status: Status,
}

impl CheckRecord {
    pub fn new(
        check: impl Into<String>,
        inputs: impl Into<String>,
        computed: impl Into<String>,
        expected: impl Into<String>,
        status: Status,
    ) -> Self {
        CheckRecord {
            check: check.into(),
            inputs: inputs.into(),
            computed: computed.into(),
            expected: expected.into(),
            status,
        }
    }

    /// An informational record with nothing to compare against.
    pub fn info(check: impl Into<String>, inputs: impl Into<String>, computed: impl Into<String>) -> Self {
        Self::new(check, inputs, computed, "", Status::Pass)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn has_failures(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn find(&self, check: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.check == check)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = write!(out, "[{}] {}", r.status.as_str(), r.check);
            if !r.inputs.is_empty() {
                let _ = write!(out, " ({})", r.inputs);
            }
            let _ = write!(out, ": {}", r.computed);
            if !r.expected.is_empty() {
                let _ = write!(out, " | expected {}", r.expected);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
