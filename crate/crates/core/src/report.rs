//! Check results in a deterministic, versioned JSON form.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "N/A",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    /// Library function that produced the result, as `module::function`.
    pub checker: &'static str,
    pub module: &'static str,
    pub input: Option<String>,
    pub verdict: Verdict,
    pub summary: String,
    /// Witnesses, counterexamples and numbers.
    pub details: Value,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, checker: &'static str, verdict: Verdict, summary: impl Into<String>) -> Self {
        let module = checker.split("::").next().unwrap_or(checker);
        CheckReport {
            check: check.into(),
            checker,
            module,
            input: None,
            verdict,
            summary: summary.into(),
            details: Value::Null,
        }
    }

    pub fn with_input(mut self, input: Option<&str>) -> Self {
        self.input = input.map(str::to_string);
        self
    }

    pub fn with_details(mut self, details: impl Serialize) -> Self {
        self.details = serde_json::to_value(details).expect("report details serialize");
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub command: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, seed: u64, checks: Vec<CheckReport>) -> Self {
        let passed = checks.iter().all(|c| c.verdict != Verdict::Fail);
        ReportDocument {
            schema: SCHEMA_VERSION,
            command: command.into(),
            seed,
            passed,
            checks,
        }
    }

    /// Pretty JSON with sorted object keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_schema_present() {
        let doc = ReportDocument::new(
            "demo",
            0,
            vec![CheckReport::new("x", "fock::count_states", Verdict::Pass, "ok").with_details(serde_json::json!({"z": 1, "a": 2}))],
        );
        let json = doc.to_json();
        assert!(json.contains("\"schema\": 1"));
        assert!(json.find("\"a\"").unwrap() < json.find("\"z\"").unwrap());
        assert!(json.find("\"checks\"").unwrap() < json.find("\"command\"").unwrap());
        assert_eq!(doc.checks[0].module, "fock");
        assert!(doc.passed);
    }

    #[test]
    fn not_applicable_does_not_fail() {
        let doc = ReportDocument::new("d", 1, vec![CheckReport::new("x", "m::f", Verdict::NotApplicable, "")]);
        assert!(doc.passed);
        let doc = ReportDocument::new("d", 1, vec![CheckReport::new("x", "m::f", Verdict::Fail, "")]);
        assert!(!doc.passed);
    }
}
