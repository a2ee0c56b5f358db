//! Machine-readable audit reports.
//!
//! Every check carries its expected value, the observed value and a kind:
//! `Exact` for closed-form or hard combinatorial facts, `Derived` for
//! values confirmed through an independent computation (usually the cut
//! machinery), `Evidence` for bounded searches that can only support, not
//! decide, a statement about the infinite complex. No check is silently
//! skipped; reports with equal configuration serialize byte-identically.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Exact,
    Derived,
    Evidence,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub kind: CheckKind,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub command: String,
    pub config: serde_json::Value,
    pub version: String,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
}

impl AuditReport {
    pub fn new(command: impl Into<String>, config: serde_json::Value) -> Self {
        AuditReport {
            command: command.into(),
            config,
            version: crate::VERSION.to_string(),
            checks: Vec::new(),
            passed: 0,
            failed: 0,
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        kind: CheckKind,
        expected: impl Into<String>,
        observed: impl Into<String>,
        pass: bool,
    ) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(CheckRecord {
            name: name.into(),
            kind,
            expected: expected.into(),
            observed: observed.into(),
            pass,
        });
    }

    /// Equality check helper: records `expected == observed`.
    pub fn eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        name: impl Into<String>,
        kind: CheckKind,
        expected: T,
        observed: T,
    ) {
        let pass = expected == observed;
        self.push(name, kind, format!("{expected:?}"), format!("{observed:?}"), pass);
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}
