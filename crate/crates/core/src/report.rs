//! Structured pass/fail records shared by every verification routine.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named check. A failing check always carries a witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: Value) -> Self {
        Check { name: name.into(), status: Status::Fail, witness: Some(witness) }
    }

    /// `Pass` when `witness` is `None`, otherwise `Fail` carrying it.
    pub fn from_witness(name: impl Into<String>, witness: Option<Value>) -> Self {
        match witness {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn totals_and_lookup() {
        let mut r = VerificationReport::new();
        r.push(Check::pass("a"));
        r.push(Check::fail("b", json!({"x": 1})));
        r.push(Check::from_witness("c", None));
        assert_eq!(r.passed(), 2);
        assert_eq!(r.failed(), 1);
        assert!(!r.all_passed());
        assert_eq!(r.get("b").unwrap().witness, Some(json!({"x": 1})));
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn passing_check_omits_witness_in_json() {
        let s = serde_json::to_string(&Check::pass("ok")).unwrap();
        assert_eq!(s, r#"{"name":"ok","status":"pass"}"#);
    }
}
