//! Python bindings: every function takes and returns JSON text or plain values.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use sylowtab::app;
use sylowtab::corpus::{self, CorpusSource};
use sylowtab::io::{self, ReportFormat};
use sylowtab::oracle::DEFAULT_CAP;
use sylowtab::simplerec::simple_order_candidates;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn analyses_json(t: &sylowtab::table::CharTable, p: Option<u64>) -> PyResult<String> {
    let analyses = app::select_primes(t, p)
        .into_iter()
        .map(|p| app::analyze_prime(t, p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(value_error)?;
    serde_json::to_string(&analyses).map_err(value_error)
}

/// Detector verdicts for a JSON table document, as a JSON list (one entry per prime).
#[pyfunction]
#[pyo3(signature = (table_json, p=None))]
fn analyze(table_json: &str, p: Option<u64>) -> PyResult<String> {
    let t = io::parse_table(table_json).map_err(value_error)?;
    analyses_json(&t, p)
}

/// Like `analyze`, for a GAP `MOT(...)` table.
#[pyfunction]
#[pyo3(signature = (gap_text, p=None))]
fn analyze_gap(gap_text: &str, p: Option<u64>) -> PyResult<String> {
    let t = io::convert_gap_mot(gap_text).map_err(value_error)?;
    analyses_json(&t, p)
}

/// `(answer, code)` of the |P:P'| = p² detector.
#[pyfunction]
fn commutator_index_p2(table_json: &str, p: u64) -> PyResult<(String, String)> {
    let t = io::parse_table(table_json).map_err(value_error)?;
    let v = sylowtab::detect::detect_commutator_index_p2(&t, p);
    Ok((v.answer.to_string(), v.code.to_string()))
}

/// `(answer, code)` of the |P:Z(P)| = p² detector.
#[pyfunction]
fn center_index_p2(table_json: &str, p: u64) -> PyResult<(String, String)> {
    let t = io::parse_table(table_json).map_err(value_error)?;
    let v = sylowtab::detect::detect_center_index_p2(&t, p);
    Ok((v.answer.to_string(), v.code.to_string()))
}

/// Oracle cross-check of a JSON group document; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (group_json, p=None, max_elements=DEFAULT_CAP))]
fn oracle(group_json: &str, p: Option<u64>, max_elements: usize) -> PyResult<String> {
    let run = app::cmd_oracle(group_json, p, max_elements).map_err(value_error)?;
    Ok(io::emit_report(&run.rows, ReportFormat::Json))
}

/// Character table document computed by the oracle for a JSON group document.
#[pyfunction]
#[pyo3(signature = (group_json, max_elements=DEFAULT_CAP))]
fn oracle_table(group_json: &str, max_elements: usize) -> PyResult<String> {
    let doc = io::parse_group(group_json).map_err(value_error)?;
    let g = doc.enumerate(max_elements).map_err(value_error)?;
    let t = sylowtab::oracle::dixon_table(&g, Some(&doc.name)).map_err(value_error)?;
    Ok(io::emit_table(&t))
}

/// JSON report of the corpus sweep.
#[pyfunction]
#[pyo3(signature = (filter=None))]
fn corpus_report(filter: Option<&str>) -> String {
    let rows = app::cmd_corpus(&corpus::entries(), filter, DEFAULT_CAP);
    io::emit_report(&rows, ReportFormat::Json)
}

#[pyfunction]
fn corpus_names() -> Vec<String> {
    corpus::entries().into_iter().map(|e| e.name).collect()
}

/// Generator document of a corpus entry.
#[pyfunction]
fn corpus_group(name: &str) -> PyResult<String> {
    let entry = corpus::entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| PyValueError::new_err(format!("no corpus entry named {name}")))?;
    match entry.source {
        CorpusSource::Group(doc) => Ok(io::emit_group(&doc)),
        CorpusSource::Table(_) => Err(PyValueError::new_err(format!("{name} is stored as a table"))),
    }
}

/// Simple groups of order n, by name.
#[pyfunction]
fn simple_groups_of_order(n: u64) -> Vec<String> {
    simple_order_candidates(n).iter().map(|s| s.to_string()).collect()
}

#[pymodule]
fn pysylowtab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_gap, m)?)?;
    m.add_function(wrap_pyfunction!(commutator_index_p2, m)?)?;
    m.add_function(wrap_pyfunction!(center_index_p2, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_table, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_report, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_group, m)?)?;
    m.add_function(wrap_pyfunction!(simple_groups_of_order, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
