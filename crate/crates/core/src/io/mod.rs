//! Versioned JSON documents for tables, groups and reports, plus import of
//! GAP library tables.

mod gap;
mod group_doc;
mod report;
mod table_doc;

use serde::de::DeserializeOwned;
use thiserror::Error;

use crate::oracle::OracleError;
use crate::table::TableError;

pub use gap::convert_gap_mot;
pub use group_doc::{emit_group, parse_group, GroupDocument};
pub use report::{emit_report, ReportFormat, ReportRow, RowStatus, REPORT_VERSION};
pub use table_doc::{
    emit_table, parse_table, parse_table_document, ClassDoc, IntText, PowerMapDoc, TableDocument, TermDoc,
    TABLE_SCHEMA_VERSION,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("invalid field {path}: {message}")]
    Field { path: String, message: String },
    #[error("power maps required")]
    MissingPowerMaps,
    #[error("table failed validation: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl IoError {
    pub fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        IoError::Field { path: path.into(), message: message.into() }
    }
}

pub(crate) fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        IoError::Parse {
            location: format!("line {} column {} ({path})", inner.line(), inner.column()),
            message: inner.to_string(),
        }
    })
}
