//! Verification reports shared by every suite.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

/// Named list of checks; the overall status is derived, never stored apart
/// from the checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub status: Status,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, true, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(name, false, Some(witness.into()));
    }

    /// Records a check; failures should carry a witness.
    pub fn push(&mut self, name: impl Into<String>, ok: bool, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::from_bool(ok),
            witness: if ok { None } else { witness },
        });
        if !ok {
            self.status = Status::Fail;
        }
    }

    /// Informational line: always passes, carries a note in the witness slot.
    pub fn note(&mut self, name: impl Into<String>, note: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Pass,
            witness: Some(note.into()),
        });
    }

    pub fn absorb(&mut self, other: Report) {
        for c in other.checks {
            let name = format!("{}/{}", other.suite, c.name);
            if c.status == Status::Fail {
                self.status = Status::Fail;
            }
            self.checks.push(Check { name, ..c });
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "suite {} ({})", self.suite, params.join(", "))?;
        for c in &self.checks {
            match &c.witness {
                Some(w) => writeln!(f, "  [{}] {}: {}", c.status, c.name, w)?,
                None => writeln!(f, "  [{}] {}", c.status, c.name)?,
            }
        }
        write!(f, "overall: {}", self.status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_status_tracks_checks() {
        let mut r = Report::new("demo").param("m", 1);
        r.pass("a");
        assert!(r.passed());
        r.fail("b", "x");
        assert!(!r.passed());
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["status"], "fail");
        assert_eq!(json["checks"][1]["witness"], "x");
        assert!(json["checks"][0].get("witness").is_none());
    }
}
