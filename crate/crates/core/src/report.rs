//! Verification reports shared by the library sweeps and the CLI.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

/// Test hook: adds one to a single coefficient of the implementation-side
/// value of the first case a verifier checks. Negative controls use it to
/// confirm every verifier can actually fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Perturbation {
    pub coeff: usize,
}

impl Perturbation {
    pub fn at(coeff: usize) -> Option<Self> {
        Some(Perturbation { coeff })
    }
}

/// Applies `hook` only to the case with index 0.
pub(crate) fn hook_for_case(hook: Option<Perturbation>, case: usize) -> Option<Perturbation> {
    hook.filter(|_| case == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of an identity sweep: `{identity, range, checked, failures}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub identity: String,
    pub range: Value,
    pub checked: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Which error a failed report converts into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Identity,
    Congruence,
    Oracle,
}

impl VerifyReport {
    pub fn new(identity: impl Into<String>, range: Value) -> Self {
        VerifyReport {
            identity: identity.into(),
            range,
            checked: 0,
            failures: Vec::new(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records one comparison.
    pub fn check(
        &mut self,
        ok: bool,
        witness: impl FnOnce() -> String,
        expected: impl FnOnce() -> String,
        actual: impl FnOnce() -> String,
    ) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                witness: witness(),
                expected: expected(),
                actual: actual(),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialises")
    }

    /// `Ok(self)` on pass, otherwise the error naming the first witness.
    pub fn into_result(self, kind: ViolationKind) -> Result<Self, Error> {
        match self.failures.first() {
            None => Ok(self),
            Some(f) => {
                let identity = self.identity.clone();
                let witness = f.witness.clone();
                Err(match kind {
                    ViolationKind::Identity => Error::IdentityViolation { identity, witness },
                    ViolationKind::Congruence => Error::CongruenceViolation { identity, witness },
                    ViolationKind::Oracle => Error::OracleMismatch { identity, witness },
                })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Infeasible,
}

impl Status {
    /// Process exit code: 0 pass, 1 fail, 2 infeasible.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Infeasible => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub detail: Value,
}

impl CheckRecord {
    pub fn from_report(name: impl Into<String>, report: &VerifyReport) -> Self {
        CheckRecord {
            name: name.into(),
            status: if report.passed() {
                Status::Pass
            } else {
                Status::Fail
            },
            detail: report.to_json(),
        }
    }

    pub fn from_error(name: impl Into<String>, err: &Error) -> Self {
        let status = match err {
            Error::InfeasibleSize { .. } => Status::Infeasible,
            _ => Status::Fail,
        };
        CheckRecord {
            name: name.into(),
            status,
            detail: Value::String(err.to_string()),
        }
    }
}

/// Result of one CLI command or battery run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub details: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, params: BTreeMap<String, Value>) -> Self {
        RunReport {
            command: command.into(),
            params,
            status: Status::Pass,
            details: Vec::new(),
            elapsed_ms: None,
        }
    }

    /// Appends a record and recomputes the aggregate status: any failure
    /// makes the run fail; otherwise any infeasible check makes it infeasible.
    pub fn push(&mut self, record: CheckRecord) {
        self.details.push(record);
        self.status = if self.details.iter().any(|d| d.status == Status::Fail) {
            Status::Fail
        } else if self.details.iter().any(|d| d.status == Status::Infeasible) {
            Status::Infeasible
        } else {
            Status::Pass
        };
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialises")
    }
}
