use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Skipped,
}

impl CaseStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseStatus::Pass => "pass",
            CaseStatus::Fail => "fail",
            CaseStatus::Skipped => "skipped",
        }
    }
}

/// One checked instance. `detail` holds the inputs and the values compared,
/// or the reason for a skip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub status: CaseStatus,
    pub detail: String,
    /// Group elements enumerated for this case (0 when nothing was enumerated).
    pub elements: u64,
}

impl Case {
    pub fn pass(id: impl Into<String>, detail: impl Into<String>, elements: u64) -> Self {
        Case {
            id: id.into(),
            status: CaseStatus::Pass,
            detail: detail.into(),
            elements,
        }
    }

    pub fn fail(id: impl Into<String>, detail: impl Into<String>, elements: u64) -> Self {
        Case {
            id: id.into(),
            status: CaseStatus::Fail,
            detail: detail.into(),
            elements,
        }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        Case {
            id: id.into(),
            status: CaseStatus::Skipped,
            detail: reason.into(),
            elements: 0,
        }
    }

    pub fn check(id: impl Into<String>, ok: bool, detail: impl Into<String>, elements: u64) -> Self {
        if ok {
            Self::pass(id, detail, elements)
        } else {
            Self::fail(id, detail, elements)
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub totals: Totals,
    /// Campaign-level findings, e.g. class sizes.
    pub summary: BTreeMap<String, Value>,
    pub first_failure: Option<Case>,
    pub cases: Vec<Case>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(
        campaign: impl Into<String>,
        parameters: BTreeMap<String, Value>,
        seed: Option<u64>,
        cases: Vec<Case>,
        summary: BTreeMap<String, Value>,
    ) -> Self {
        let mut totals = Totals {
            total: cases.len(),
            ..Totals::default()
        };
        for c in &cases {
            match c.status {
                CaseStatus::Pass => totals.pass += 1,
                CaseStatus::Fail => totals.fail += 1,
                CaseStatus::Skipped => totals.skipped += 1,
            }
        }
        VerificationReport {
            campaign: campaign.into(),
            parameters,
            seed,
            totals,
            summary,
            first_failure: cases.iter().find(|c| c.status == CaseStatus::Fail).cloned(),
            cases,
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn elements(&self) -> u64 {
        self.cases.iter().map(|c| c.elements).sum()
    }

    /// Pretty JSON. Timing is left out unless asked for, so that equal
    /// inputs give byte-identical reports.
    pub fn to_json(&self, include_timing: bool) -> String {
        if include_timing {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string_pretty(&VerificationReport {
                elapsed_ms: None,
                ..self.clone()
            })
        }
        .expect("report serializes")
    }

    /// One line per case: `status,id,elements,detail`, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("status,id,elements,detail\n");
        for c in &self.cases {
            let _ = writeln!(out, "{},{},{},{}", c.status.as_str(), csv_field(&c.id), c.elements, csv_field(&c.detail));
        }
        out
    }

    pub fn to_table(&self) -> String {
        let width = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
        let mut out = format!(
            "campaign {}: {} cases, {} pass, {} fail, {} skipped\n",
            self.campaign, self.totals.total, self.totals.pass, self.totals.fail, self.totals.skipped
        );
        for (k, v) in &self.summary {
            let _ = writeln!(out, "  {k}: {v}");
        }
        for c in &self.cases {
            let _ = writeln!(out, "{:<8} {:<width$}  {}", c.status.as_str(), c.id, c.detail);
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
