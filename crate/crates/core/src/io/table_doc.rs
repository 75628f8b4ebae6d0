use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::IoError;
use crate::exactnum::{cyc_root, Cyc, Rat};
use crate::table::{CharTable, ClassData};

pub const TABLE_SCHEMA_VERSION: u32 = 1;

/// An integer written either as a JSON number or, when large, as a string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntText {
    Num(i64),
    Text(String),
}

impl IntText {
    fn from_bigint(v: &BigInt) -> Self {
        i64::try_from(v).map(IntText::Num).unwrap_or_else(|_| IntText::Text(v.to_string()))
    }

    fn to_bigint(&self, at: &str) -> Result<BigInt, IoError> {
        match self {
            IntText::Num(v) => Ok(BigInt::from(*v)),
            IntText::Text(s) => s.trim().parse().map_err(|_| IoError::field(at, format!("'{s}' is not an integer"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub size: u64,
    pub order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerMapDoc {
    pub prime: u64,
    pub map: Vec<usize>,
}

/// `numerator/denominator · ζ_conductor^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub conductor: u64,
    pub exponent: i64,
    pub numerator: IntText,
    pub denominator: IntText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group_order: u64,
    pub classes: Vec<ClassDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_maps: Option<Vec<PowerMapDoc>>,
    /// One row per irreducible character; each value is a sum of terms.
    pub characters: Vec<Vec<Vec<TermDoc>>>,
}

fn value_terms(v: &Cyc) -> Vec<TermDoc> {
    v.terms()
        .into_iter()
        .map(|(e, q)| TermDoc {
            conductor: v.conductor() as u64,
            exponent: e as i64,
            numerator: IntText::from_bigint(q.numer()),
            denominator: IntText::from_bigint(q.denom()),
        })
        .collect()
}

impl TableDocument {
    pub fn from_table(t: &CharTable) -> Self {
        TableDocument {
            schema_version: TABLE_SCHEMA_VERSION,
            name: t.name().map(str::to_string),
            group_order: t.group_order(),
            classes: t
                .classes()
                .iter()
                .map(|c| ClassDoc { size: c.size, order: c.element_order, name: c.name.clone() })
                .collect(),
            power_maps: Some(
                t.power_maps().iter().map(|(&prime, map)| PowerMapDoc { prime, map: map.clone() }).collect(),
            ),
            characters: t.chars().iter().map(|row| row.iter().map(value_terms).collect()).collect(),
        }
    }

    /// Builds and validates the table described by this document.
    pub fn to_table(&self) -> Result<CharTable, IoError> {
        if self.schema_version != TABLE_SCHEMA_VERSION {
            return Err(IoError::field(
                "schema_version",
                format!("unsupported version {} (expected {TABLE_SCHEMA_VERSION})", self.schema_version),
            ));
        }
        let power_docs = self.power_maps.as_ref().ok_or(IoError::MissingPowerMaps)?;
        let mut power_maps = BTreeMap::new();
        for (i, pm) in power_docs.iter().enumerate() {
            if power_maps.insert(pm.prime, pm.map.clone()).is_some() {
                return Err(IoError::field(format!("power_maps[{i}]"), format!("duplicate prime {}", pm.prime)));
            }
        }
        let classes = self
            .classes
            .iter()
            .map(|c| ClassData { size: c.size, element_order: c.order, name: c.name.clone() })
            .collect();
        let mut chars = Vec::with_capacity(self.characters.len());
        for (i, row) in self.characters.iter().enumerate() {
            let mut values = Vec::with_capacity(row.len());
            for (j, terms) in row.iter().enumerate() {
                values.push(parse_value(terms, &format!("characters[{i}][{j}]"))?);
            }
            chars.push(values);
        }
        let table = CharTable::from_parts(self.name.clone(), self.group_order, classes, power_maps, chars)?;
        let violations = table.validate();
        if violations.is_empty() {
            Ok(table)
        } else {
            Err(IoError::Invalid(violations))
        }
    }
}

fn parse_value(terms: &[TermDoc], at: &str) -> Result<Cyc, IoError> {
    let mut acc = Cyc::zero();
    for (t, term) in terms.iter().enumerate() {
        let here = format!("{at}[{t}]");
        let num = term.numerator.to_bigint(&format!("{here}.numerator"))?;
        let den = term.denominator.to_bigint(&format!("{here}.denominator"))?;
        if den <= BigInt::from(0) {
            return Err(IoError::field(format!("{here}.denominator"), "denominator must be positive"));
        }
        let root = cyc_root(term.conductor, term.exponent).map_err(|e| IoError::field(format!("{here}.conductor"), e.to_string()))?;
        let scaled = root.scale(&Rat::new(num, den));
        acc = acc.checked_add(&scaled).map_err(|e| IoError::field(&here, e.to_string()))?;
    }
    Ok(acc)
}

/// Parses and validates a JSON table document.
pub fn parse_table(text: &str) -> Result<CharTable, IoError> {
    parse_table_document(text)?.to_table()
}

pub fn parse_table_document(text: &str) -> Result<TableDocument, IoError> {
    super::from_json(text)
}

/// Canonical pretty-printed JSON for a table.
pub fn emit_table(t: &CharTable) -> String {
    let mut s = serde_json::to_string_pretty(&TableDocument::from_table(t)).expect("documents serialize");
    s.push('\n');
    s
}
