//! Line-oriented `key=value` key files and the survey CSV format.
//!
//! Key files carry base-10 integers only, one `key=value` pair per line,
//! each line terminated by a single linefeed. Public files hold `scheme`,
//! `exp` (e or p depending on the scheme) and `a`; private files hold
//! `scheme`, `d` and `a`. Unknown or duplicate keys are rejected.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::falsifier::{SurveyReport, SurveyRow};
use crate::schemes::{PrivateKeyRecord, PublicKeyRecord, SchemeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KeyFileError {
    #[error("malformed line {0:?}: expected key=value")]
    MalformedLine(String),
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("duplicate key {0:?}")]
    DuplicateKey(String),
    #[error("missing required key {0:?}")]
    MissingKey(&'static str),
    #[error("bad value for {key:?}: {value:?}")]
    BadValue { key: String, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsvError {
    #[error("bad CSV header {0:?}")]
    BadHeader(String),
    #[error("malformed CSV row {0:?}")]
    BadRow(String),
}

pub const CSV_HEADER: &str = "b,v,e,scheme,j,failure_count";

pub fn format_public(record: &PublicKeyRecord) -> String {
    format!(
        "scheme={}\nexp={}\na={}\n",
        record.scheme, record.exponent, record.a
    )
}

pub fn format_private(record: &PrivateKeyRecord) -> String {
    format!("scheme={}\nd={}\na={}\n", record.scheme, record.d, record.a)
}

pub fn parse_public(text: &str) -> Result<PublicKeyRecord, KeyFileError> {
    let fields = parse_fields(text, &["scheme", "exp", "a"])?;
    Ok(PublicKeyRecord {
        scheme: scheme_field(&fields)?,
        exponent: int_field(&fields, "exp")?,
        a: int_field(&fields, "a")?,
    })
}

pub fn parse_private(text: &str) -> Result<PrivateKeyRecord, KeyFileError> {
    let fields = parse_fields(text, &["scheme", "d", "a"])?;
    Ok(PrivateKeyRecord {
        scheme: scheme_field(&fields)?,
        d: int_field(&fields, "d")?,
        a: int_field(&fields, "a")?,
    })
}

fn parse_fields(
    text: &str,
    allowed: &'static [&'static str],
) -> Result<BTreeMap<String, String>, KeyFileError> {
    let mut fields = BTreeMap::new();
    for line in text.lines() {
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| KeyFileError::MalformedLine(line.to_string()))?;
        if !allowed.contains(&key) {
            return Err(KeyFileError::UnknownKey(key.to_string()));
        }
        if fields.insert(key.to_string(), value.to_string()).is_some() {
            return Err(KeyFileError::DuplicateKey(key.to_string()));
        }
    }
    for &required in allowed {
        if !fields.contains_key(required) {
            return Err(KeyFileError::MissingKey(required));
        }
    }
    Ok(fields)
}

fn scheme_field(fields: &BTreeMap<String, String>) -> Result<SchemeId, KeyFileError> {
    let value = &fields["scheme"];
    value.parse().map_err(|_| KeyFileError::BadValue {
        key: "scheme".to_string(),
        value: value.clone(),
    })
}

fn int_field(fields: &BTreeMap<String, String>, key: &str) -> Result<u64, KeyFileError> {
    let value = &fields[key];
    // Strict base-10: no sign, no separators, no surrounding whitespace.
    if value.is_empty() || !value.bytes().all(|c| c.is_ascii_digit()) {
        return Err(KeyFileError::BadValue {
            key: key.to_string(),
            value: value.clone(),
        });
    }
    value.parse().map_err(|_| KeyFileError::BadValue {
        key: key.to_string(),
        value: value.clone(),
    })
}

pub fn format_csv(report: &SurveyReport) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.b, row.v, row.e, row.scheme, row.j, row.failure_count
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<SurveyRow>, CsvError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != CSV_HEADER {
        return Err(CsvError::BadHeader(header.to_string()));
    }
    lines
        .map(|line| {
            let parts: Vec<&str> = line.split(',').collect();
            let [b, v, e, scheme, j, failure_count] = parts.as_slice() else {
                return Err(CsvError::BadRow(line.to_string()));
            };
            let int = |s: &str| s.parse::<u64>().map_err(|_| CsvError::BadRow(line.to_string()));
            Ok(SurveyRow {
                b: int(b)?,
                v: int(v)?,
                e: int(e)?,
                scheme: scheme
                    .parse::<SchemeId>()
                    .map_err(|_| CsvError::BadRow(line.to_string()))?,
                j: int(j)?,
                failure_count: int(failure_count)?,
            })
        })
        .collect()
}
