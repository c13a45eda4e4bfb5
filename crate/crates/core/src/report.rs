//! Pass/fail reports emitted by every verifier.

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.check(name, true, "");
    }

    pub fn set(&mut self, key: impl Into<String>, value: Value) {
        self.data.insert(key.into(), value);
    }

    /// Conjunction of all checks.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Copies the checks of `other` under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: &Report) {
        for c in &other.checks {
            self.checks.push(Check {
                name: format!("{prefix}{}", c.name),
                passed: c.passed,
                detail: c.detail.clone(),
            });
        }
    }

    /// Key-ordered JSON; `serde_json` maps are sorted so output is byte-stable.
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        json!({
            "subject": self.subject,
            "checks": checks,
            "summary": if self.passed() { "pass" } else { "fail" },
            "data": Value::Object(self.data.clone()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_is_conjunction() {
        let mut r = Report::new("x");
        assert!(r.passed());
        r.pass("a");
        r.check("b", false, "broken");
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        let text = serde_json::to_string(&r.to_json()).unwrap();
        assert!(text.starts_with("{\"checks\""));
        assert!(text.contains("\"summary\":\"fail\""));
    }
}
