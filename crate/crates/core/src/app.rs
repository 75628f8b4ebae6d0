//! Batch commands shared by the CLI and the Python bindings.

use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::{abelian_sylow_test, block_partition, count_height_zero_principal};
use crate::corpus::{CorpusEntry, CorpusSource, Pin};
use crate::detect::{detect_center_index_p2, detect_commutator_index_p2, Answer, Verdict};
use crate::io::{parse_table, IoError, ReportRow, RowStatus, TableDocument};
use crate::numtheory::{is_prime, prime_divisors};
use crate::oracle::{dixon_table, ground_truth, Group, GroundTruth, OracleError};
use crate::table::{CharTable, TableError};

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Usage(String),
}

/// Everything the detectors say about one (table, prime) pair.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeAnalysis {
    pub p: u64,
    pub commutator: Verdict,
    pub center: Verdict,
    pub abelian_sylow: bool,
    pub height_zero_principal: u64,
    pub block_count: usize,
    pub principal_block: Vec<usize>,
}

pub fn analyze_prime(t: &CharTable, p: u64) -> Result<PrimeAnalysis, AppError> {
    if !is_prime(p) {
        return Err(AppError::Usage(format!("{p} is not a prime")));
    }
    let blocks = block_partition(t, p)?;
    Ok(PrimeAnalysis {
        p,
        commutator: detect_commutator_index_p2(t, p),
        center: detect_center_index_p2(t, p),
        abelian_sylow: abelian_sylow_test(t, p)?,
        height_zero_principal: count_height_zero_principal(t, p)?,
        block_count: blocks.blocks.len(),
        principal_block: blocks.principal().to_vec(),
    })
}

/// The primes to analyze: the requested one, or every prime dividing |G|.
pub fn select_primes(t: &CharTable, p: Option<u64>) -> Vec<u64> {
    match p {
        Some(p) => vec![p],
        None => prime_divisors(t.group_order()),
    }
}

fn agrees(answer: Answer, truth: bool) -> bool {
    answer.as_bool().is_none_or(|b| b == truth)
}

/// Builds a report row and its status from the analysis, the oracle truth and
/// an optional pin.
pub fn report_row(
    name: &str,
    order: u64,
    a: &PrimeAnalysis,
    truth: Option<&GroundTruth>,
    pin: Option<&Pin>,
) -> ReportRow {
    let mut notes = Vec::new();
    let unknown = a.commutator.is_unknown() || a.center.is_unknown();
    let status = match truth {
        None => {
            if unknown {
                RowStatus::Unknown
            } else {
                RowStatus::Na
            }
        }
        Some(t) => {
            let mut ok = true;
            if !agrees(a.commutator.answer, t.commutator_index_is_p2()) {
                notes.push(format!("thmA {} but |P:P'| = {}", a.commutator.answer, t.commutator_index));
                ok = false;
            }
            if !agrees(a.center.answer, t.center_index_is_p2()) {
                notes.push(format!("thmB {} but |P:Z(P)| = {}", a.center.answer, t.center_index));
                ok = false;
            }
            if a.abelian_sylow != t.abelian {
                notes.push(format!("abelian test {} but oracle {}", a.abelian_sylow, t.abelian));
                ok = false;
            }
            if a.commutator.answer == Answer::Yes && t.sylow_order >= t.p.pow(3) && !t.maximal_class {
                notes.push("thmA Yes on a Sylow subgroup that is not of maximal class".into());
                ok = false;
            }
            if let Some(pin) = pin {
                if (pin.commutator_index, pin.center_index) != (t.commutator_index, t.center_index) {
                    notes.push(format!(
                        "pinned ({}, {}) but oracle ({}, {})",
                        pin.commutator_index, pin.center_index, t.commutator_index, t.center_index
                    ));
                    ok = false;
                }
            }
            if !ok {
                RowStatus::Mismatch
            } else if unknown {
                RowStatus::Unknown
            } else {
                RowStatus::Match
            }
        }
    };
    ReportRow {
        group: name.to_string(),
        order,
        p: a.p,
        commutator_answer: a.commutator.answer.to_string(),
        commutator_code: a.commutator.code.to_string(),
        center_answer: a.center.answer.to_string(),
        center_code: a.center.code.to_string(),
        abelian_sylow: a.abelian_sylow,
        height_zero_principal: a.height_zero_principal,
        truth: truth.copied(),
        status,
        notes,
    }
}

/// Analysis of a table document for one prime or all primes.
pub fn cmd_analyze(text: &str, p: Option<u64>) -> Result<(CharTable, Vec<PrimeAnalysis>), AppError> {
    let t = parse_table(text)?;
    let analyses = select_primes(&t, p).into_iter().map(|p| analyze_prime(&t, p)).collect::<Result<_, _>>()?;
    Ok((t, analyses))
}

/// Result of running the oracle and the detectors on one enumerated group.
#[derive(Debug, Clone)]
pub struct OracleRun {
    pub table: CharTable,
    pub analyses: Vec<PrimeAnalysis>,
    pub truths: Vec<GroundTruth>,
    pub rows: Vec<ReportRow>,
}

/// Differences between table centralizer orders and an element scan.
pub fn centralizer_discrepancies(g: &Group, t: &CharTable) -> Vec<String> {
    let cls = g.conjugacy_data();
    let mut out = Vec::new();
    if cls.classes.len() != t.k() {
        out.push(format!("{} classes by scan, {} in the table", cls.classes.len(), t.k()));
        return out;
    }
    for (c, class) in cls.classes.iter().enumerate() {
        let scanned = g.centralizer_order(class.representative);
        match t.centralizer_order(c) {
            Ok(v) if v == scanned => {}
            Ok(v) => out.push(format!("class {c}: table {v}, scan {scanned}")),
            Err(e) => out.push(format!("class {c}: {e}")),
        }
    }
    out
}

pub fn oracle_run(name: &str, g: &Group, p: Option<u64>, pins: &[Pin]) -> Result<OracleRun, AppError> {
    let table = dixon_table(g, Some(name))?;
    let mut extra = table.validate();
    extra.extend(centralizer_discrepancies(g, &table));
    let mut analyses = Vec::new();
    let mut truths = Vec::new();
    let mut rows = Vec::new();
    for p in select_primes(&table, p) {
        let a = analyze_prime(&table, p)?;
        let truth = ground_truth(g, p)?;
        let mut row = report_row(name, g.order(), &a, Some(&truth), pins.iter().find(|pin| pin.p == p));
        if !extra.is_empty() {
            row.notes.extend(extra.iter().cloned());
            row.status = RowStatus::Mismatch;
        }
        analyses.push(a);
        truths.push(truth);
        rows.push(row);
    }
    Ok(OracleRun { table, analyses, truths, rows })
}

pub fn cmd_oracle(doc_text: &str, p: Option<u64>, cap: usize) -> Result<OracleRun, AppError> {
    let doc = crate::io::parse_group(doc_text)?;
    let g = doc.enumerate(cap)?;
    oracle_run(&doc.name, &g, p, &[])
}

fn entry_rows(entry: &CorpusEntry, cap: usize) -> Result<Vec<ReportRow>, AppError> {
    match &entry.source {
        CorpusSource::Group(doc) => {
            let g = doc.enumerate(cap)?;
            let primes: Vec<Option<u64>> =
                if entry.primes.is_empty() { vec![None] } else { entry.primes.iter().map(|&p| Some(p)).collect() };
            let mut rows = Vec::new();
            for p in primes {
                rows.extend(oracle_run(&entry.name, &g, p, &entry.pins)?.rows);
            }
            Ok(rows)
        }
        CorpusSource::Table(doc) => table_entry_rows(&entry.name, doc, &entry.primes),
    }
}

fn table_entry_rows(name: &str, doc: &TableDocument, primes: &[u64]) -> Result<Vec<ReportRow>, AppError> {
    let t = doc.to_table()?;
    let primes = if primes.is_empty() { prime_divisors(t.group_order()) } else { primes.to_vec() };
    primes
        .into_iter()
        .map(|p| Ok(report_row(name, t.group_order(), &analyze_prime(&t, p)?, None, None)))
        .collect()
}

/// Sweeps the corpus in parallel; rows come back in corpus order. Entries
/// whose name does not contain `filter` are skipped.
pub fn cmd_corpus(entries: &[CorpusEntry], filter: Option<&str>, cap: usize) -> Vec<ReportRow> {
    let selected: Vec<&CorpusEntry> =
        entries.iter().filter(|e| filter.is_none_or(|f| e.name.contains(f))).collect();
    let per_entry: Vec<Vec<ReportRow>> = selected
        .par_iter()
        .map(|e| {
            entry_rows(e, cap).unwrap_or_else(|err| {
                vec![ReportRow {
                    group: e.name.clone(),
                    order: 0,
                    p: 0,
                    commutator_answer: "-".into(),
                    commutator_code: "-".into(),
                    center_answer: "-".into(),
                    center_code: "-".into(),
                    abelian_sylow: false,
                    height_zero_principal: 0,
                    truth: None,
                    status: RowStatus::Mismatch,
                    notes: vec![err.to_string()],
                }]
            })
        })
        .collect();
    per_entry.into_iter().flatten().collect()
}

pub fn has_mismatch(rows: &[ReportRow]) -> bool {
    rows.iter().any(|r| r.status == RowStatus::Mismatch)
}
