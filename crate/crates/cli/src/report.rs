//! Audit reports: a JSON contract plus a plain-text rendering.

use serde::{Deserialize, Serialize};

use duality_core::kgroup::CheckOutcome;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRow {
    pub label: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl From<CheckOutcome> for CheckRow {
    fn from(c: CheckOutcome) -> Self {
        CheckRow { label: c.label, pass: c.pass, witness: c.witness }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditReport {
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<CheckRow>,
    pub summary: Summary,
}

impl AuditReport {
    pub fn new(subject: String, seed: Option<u64>, checks: Vec<CheckOutcome>) -> Self {
        let checks: Vec<CheckRow> = checks.into_iter().map(CheckRow::from).collect();
        let passed = checks.iter().filter(|c| c.pass).count();
        let total = checks.len();
        AuditReport { subject, seed, checks, summary: Summary { passed, total } }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("audit: {}\n", self.subject));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for c in &self.checks {
            if c.pass {
                out.push_str(&format!("  [pass] {}\n", c.label));
            } else {
                out.push_str(&format!(
                    "  [FAIL] {}: {}\n",
                    c.label,
                    c.witness.as_deref().unwrap_or("(no witness)")
                ));
            }
        }
        out.push_str(&format!(
            "summary: {}/{} checks passed\n",
            self.summary.passed, self.summary.total
        ));
        out
    }
}
