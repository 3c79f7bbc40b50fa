//! Recorded search-engine observations in CSV form.
//!
//! ```text
//! engine,query,result_count,relevance,date,section,item
//! Google,digital humanities + Kurdish,12400,partly,2015-06-14,,
//! ```
//!
//! `section` and `item` may both be left empty. Row numbers in errors are
//! file line numbers, the header being line 1.

use std::io::Read;

use chrono::NaiveDate;

use super::{EvidencePayload, EvidenceRecord, Relevance};
use crate::assessment::ItemPath;
use crate::error::{Error, Result};

pub const SEARCH_LOG_HEADER: [&str; 7] = [
    "engine",
    "query",
    "result_count",
    "relevance",
    "date",
    "section",
    "item",
];

const ID_PREFIX: &str = "ev-search-";

/// Imports a search log, numbering records `ev-search-1`, `ev-search-2`, ...
pub fn import_search_log<R: Read>(reader: R) -> Result<Vec<EvidenceRecord>> {
    import_search_log_from(reader, 1)
}

/// Like [`import_search_log`] but numbering from `first_index`.
pub fn import_search_log_from<R: Read>(
    reader: R,
    first_index: usize,
) -> Result<Vec<EvidenceRecord>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);

    let header = csv.headers().map_err(|e| csv_error(1, e))?.clone();
    let names: Vec<&str> = header.iter().map(str::trim).collect();
    if names != SEARCH_LOG_HEADER {
        return Err(Error::SearchLog {
            row: 1,
            message: format!(
                "expected header `{}`, got `{}`",
                SEARCH_LOG_HEADER.join(","),
                names.join(",")
            ),
        });
    }

    let mut out = Vec::new();
    for (n, row) in csv.records().enumerate() {
        let row = row.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(n + 2);
            csv_error(line, e)
        })?;
        let line = row.position().map(|p| p.line() as usize).unwrap_or(n + 2);
        let fail = |message: String| Error::SearchLog { row: line, message };
        let field = |i: usize| row.get(i).unwrap_or("").trim();

        let engine = field(0);
        if engine.is_empty() {
            return Err(fail("engine is empty".into()));
        }
        let result_count = parse_count(field(2)).map_err(fail)?;
        let relevance: Relevance = field(3).parse().map_err(fail)?;
        let date = NaiveDate::parse_from_str(field(4), "%Y-%m-%d")
            .map_err(|e| fail(format!("invalid date '{}': {e}", field(4))))?;
        let item_ref = match (field(5), field(6)) {
            ("", "") => None,
            ("", _) | (_, "") => {
                return Err(fail(
                    "section and item must both be given or both be empty".into(),
                ))
            }
            (section, item) => Some(ItemPath::new(section, item)),
        };

        out.push(EvidenceRecord {
            id: format!("{ID_PREFIX}{}", first_index + n),
            source: engine.to_string(),
            date,
            item_ref,
            payload: EvidencePayload::Search {
                query: field(1).to_string(),
                result_count,
                relevance,
            },
        });
    }
    Ok(out)
}

/// Smallest index such that `ev-search-<index>` and all later ids are unused.
pub fn next_search_index(ledger: &[EvidenceRecord]) -> usize {
    ledger
        .iter()
        .filter_map(|r| r.id.strip_prefix(ID_PREFIX)?.parse::<usize>().ok())
        .max()
        .map_or(1, |n| n + 1)
}

/// Accepts plain digits, optionally with thousands separators ("12,400").
fn parse_count(raw: &str) -> std::result::Result<u64, String> {
    let digits: String = raw.chars().filter(|c| *c != ',' && *c != '_').collect();
    if digits.starts_with('-') {
        return Err(format!("negative result_count '{raw}'"));
    }
    digits
        .parse::<u64>()
        .map_err(|_| format!("invalid result_count '{raw}'"))
}

fn csv_error(row: usize, e: csv::Error) -> Error {
    Error::SearchLog {
        row,
        message: format!("malformed CSV: {e}"),
    }
}
