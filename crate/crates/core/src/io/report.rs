use serde::{Deserialize, Serialize};

use crate::oracle::GroundTruth;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RowStatus {
    /// Every decided verdict agrees with the oracle.
    Match,
    /// Some verdict contradicts the oracle or a pinned value.
    Mismatch,
    /// No contradiction, but some detector answered Unknown.
    Unknown,
    /// No oracle truth available.
    Na,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Match => "MATCH",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::Unknown => "UNKNOWN",
            RowStatus::Na => "NA",
        }
    }
}

/// One (group, prime) line of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub group: String,
    pub order: u64,
    pub p: u64,
    pub commutator_answer: String,
    pub commutator_code: String,
    pub center_answer: String,
    pub center_code: String,
    pub abelian_sylow: bool,
    pub height_zero_principal: u64,
    pub truth: Option<GroundTruth>,
    pub status: RowStatus,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    report_version: u32,
    rows: &'a [ReportRow],
}

const HEADER: [&str; 14] = [
    "group", "order", "p", "thmA", "thmA_code", "thmB", "thmB_code", "abelian_sylow", "h0_principal",
    "truth_comm_index", "truth_center_index", "truth_max_class", "status", "notes",
];

/// Deterministic report text: a tab-separated table or a JSON document.
pub fn emit_report(rows: &[ReportRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&JsonReport { report_version: REPORT_VERSION, rows })
                .expect("reports serialize");
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let mut out = format!("# sylowtab report v{REPORT_VERSION}\n{}\n", HEADER.join("\t"));
            for r in rows {
                let (ci, zi, mc) = match &r.truth {
                    Some(t) => (t.commutator_index.to_string(), t.center_index.to_string(), t.maximal_class.to_string()),
                    None => ("-".into(), "-".into(), "-".into()),
                };
                let fields = [
                    r.group.clone(),
                    r.order.to_string(),
                    r.p.to_string(),
                    r.commutator_answer.clone(),
                    r.commutator_code.clone(),
                    r.center_answer.clone(),
                    r.center_code.clone(),
                    r.abelian_sylow.to_string(),
                    r.height_zero_principal.to_string(),
                    ci,
                    zi,
                    mc,
                    r.status.as_str().to_string(),
                    if r.notes.is_empty() { "-".into() } else { r.notes.join("; ") },
                ];
                out.push_str(&fields.join("\t"));
                out.push('\n');
            }
            out
        }
    }
}
