//! Provenance ledger behind availability judgments.
//!
//! Every record is a dated observation from a named source: a search-engine
//! hit count, an interview response, or a catalog / prior-knowledge entry.
//! Ledger operations are functional and return new assessments.

mod interview;
mod search_log;
mod visibility;

use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::assessment::{Assessment, ItemPath};
use crate::error::{Error, Result};
use crate::scoring::{normalize_count, NormalizedLevel, Ruleset};

pub use interview::{
    interview_distribution, interview_responses, InterviewDistribution, InterviewResponse,
    ResponseShare, SubjectDistribution,
};
pub use search_log::{
    import_search_log, import_search_log_from, next_search_index, SEARCH_LOG_HEADER,
};
pub use visibility::{visibility_level, VisibilityThresholds};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RecordRepr", into = "RecordRepr")]
pub struct EvidenceRecord {
    pub id: String,
    pub source: String,
    pub date: NaiveDate,
    pub item_ref: Option<ItemPath>,
    pub payload: EvidencePayload,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvidencePayload {
    Search {
        query: String,
        result_count: u64,
        relevance: Relevance,
    },
    Interview {
        subject: String,
        response: String,
    },
    Catalog {
        summary: String,
        approx_size: Option<u64>,
    },
    Priori {
        summary: String,
        approx_size: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvidenceKind {
    Search,
    Interview,
    Catalog,
    Priori,
}

impl EvidencePayload {
    pub fn kind(&self) -> EvidenceKind {
        match self {
            EvidencePayload::Search { .. } => EvidenceKind::Search,
            EvidencePayload::Interview { .. } => EvidenceKind::Interview,
            EvidencePayload::Catalog { .. } => EvidenceKind::Catalog,
            EvidencePayload::Priori { .. } => EvidenceKind::Priori,
        }
    }
}

impl EvidenceRecord {
    pub fn kind(&self) -> EvidenceKind {
        self.payload.kind()
    }
}

/// Assessor-recorded relevance of a search result set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relevance {
    High,
    Partly,
    #[serde(rename = "none")]
    NotRelevant,
    Na,
}

impl Relevance {
    pub fn as_str(self) -> &'static str {
        match self {
            Relevance::High => "high",
            Relevance::Partly => "partly",
            Relevance::NotRelevant => "none",
            Relevance::Na => "na",
        }
    }
}

impl std::str::FromStr for Relevance {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "high" => Ok(Relevance::High),
            "partly" => Ok(Relevance::Partly),
            "none" => Ok(Relevance::NotRelevant),
            "na" => Ok(Relevance::Na),
            other => Err(format!(
                "unknown relevance '{other}' (expected high, partly, none or na)"
            )),
        }
    }
}

impl fmt::Display for Relevance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordRepr {
    id: String,
    kind: EvidenceKind,
    source: String,
    date: NaiveDate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    section: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    item: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    query: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    result_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relevance: Option<Relevance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subject: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    response: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    summary: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    approx_size: Option<u64>,
}

impl TryFrom<RecordRepr> for EvidenceRecord {
    type Error = String;

    fn try_from(r: RecordRepr) -> std::result::Result<Self, Self::Error> {
        let id = r.id;
        if id.trim().is_empty() {
            return Err("evidence id is empty".into());
        }
        let missing = |field: &str| format!("evidence '{id}' ({:?}) is missing `{field}`", r.kind);
        let search_fields = r.query.is_some() || r.result_count.is_some() || r.relevance.is_some();
        let interview_fields = r.subject.is_some() || r.response.is_some();
        let catalog_fields = r.summary.is_some() || r.approx_size.is_some();

        let payload = match r.kind {
            EvidenceKind::Search if !interview_fields && !catalog_fields => {
                EvidencePayload::Search {
                    query: r.query.ok_or_else(|| missing("query"))?,
                    result_count: r.result_count.ok_or_else(|| missing("result_count"))?,
                    relevance: r.relevance.ok_or_else(|| missing("relevance"))?,
                }
            }
            EvidenceKind::Interview if !search_fields && !catalog_fields => {
                EvidencePayload::Interview {
                    subject: r.subject.ok_or_else(|| missing("subject"))?,
                    response: r.response.ok_or_else(|| missing("response"))?,
                }
            }
            EvidenceKind::Catalog if !search_fields && !interview_fields => {
                EvidencePayload::Catalog {
                    summary: r.summary.ok_or_else(|| missing("summary"))?,
                    approx_size: r.approx_size,
                }
            }
            EvidenceKind::Priori if !search_fields && !interview_fields => {
                EvidencePayload::Priori {
                    summary: r.summary.ok_or_else(|| missing("summary"))?,
                    approx_size: r.approx_size,
                }
            }
            kind => {
                return Err(format!(
                    "evidence '{id}' carries fields that do not belong to kind {kind:?}"
                ))
            }
        };

        let item_ref = match (r.section, r.item) {
            (None, None) => None,
            (Some(section), Some(item)) => Some(ItemPath { section, item }),
            _ => {
                return Err(format!(
                    "evidence '{id}' must give both `section` and `item` or neither"
                ))
            }
        };

        Ok(EvidenceRecord {
            id,
            source: r.source,
            date: r.date,
            item_ref,
            payload,
        })
    }
}

impl From<EvidenceRecord> for RecordRepr {
    fn from(rec: EvidenceRecord) -> Self {
        let (section, item) = match rec.item_ref {
            Some(p) => (Some(p.section), Some(p.item)),
            None => (None, None),
        };
        let mut repr = RecordRepr {
            id: rec.id,
            kind: rec.payload.kind(),
            source: rec.source,
            date: rec.date,
            section,
            item,
            query: None,
            result_count: None,
            relevance: None,
            subject: None,
            response: None,
            summary: None,
            approx_size: None,
        };
        match rec.payload {
            EvidencePayload::Search {
                query,
                result_count,
                relevance,
            } => {
                repr.query = Some(query);
                repr.result_count = Some(result_count);
                repr.relevance = Some(relevance);
            }
            EvidencePayload::Interview { subject, response } => {
                repr.subject = Some(subject);
                repr.response = Some(response);
            }
            EvidencePayload::Catalog {
                summary,
                approx_size,
            }
            | EvidencePayload::Priori {
                summary,
                approx_size,
            } => {
                repr.summary = Some(summary);
                repr.approx_size = approx_size;
            }
        }
        repr
    }
}

/// Adds `rec` to the ledger and references it from the item at `path`.
///
/// A record without an `item_ref` is tagged with `path`.
pub fn attach_evidence(
    a: &Assessment,
    mut rec: EvidenceRecord,
    path: &ItemPath,
) -> Result<Assessment> {
    if a.evidence_record(&rec.id).is_some() {
        return Err(Error::DuplicateEvidenceId(rec.id));
    }
    let mut out = a.clone();
    let item = out
        .item_mut(path)
        .ok_or_else(|| Error::UnknownPath(path.clone()))?;
    item.evidence_refs.push(rec.id.clone());
    rec.item_ref.get_or_insert_with(|| path.clone());
    out.evidence.push(rec);
    Ok(out)
}

/// Appends imported records. Records with an `item_ref` are attached to that
/// item; the rest go into the ledger unreferenced.
pub fn merge_records(a: &Assessment, records: Vec<EvidenceRecord>) -> Result<Assessment> {
    let mut out = a.clone();
    for rec in records {
        out = match rec.item_ref.clone() {
            Some(path) => attach_evidence(&out, rec, &path)?,
            None => {
                if out.evidence_record(&rec.id).is_some() {
                    return Err(Error::DuplicateEvidenceId(rec.id));
                }
                out.evidence.push(rec);
                out
            }
        };
    }
    Ok(out)
}

/// Advisory availability level derived from an item's attached evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suggestion {
    pub level: NormalizedLevel,
    pub rationale: String,
}

/// Suggests a level from quantitative evidence. Search hit counts take
/// precedence; otherwise catalog and prior-knowledge sizes are summed and
/// mapped through the ruleset's count thresholds. Returns `None` when the
/// item has no quantitative evidence.
pub fn suggest_availability(
    a: &Assessment,
    path: &ItemPath,
    thresholds: &VisibilityThresholds,
    ruleset: &Ruleset,
) -> Result<Option<Suggestion>> {
    let item = a
        .item(path)
        .ok_or_else(|| Error::UnknownPath(path.clone()))?;
    let records: Vec<&EvidenceRecord> = a.evidence_for(item).collect();

    let hits: Vec<u64> = records
        .iter()
        .filter_map(|r| match r.payload {
            EvidencePayload::Search { result_count, .. } => Some(result_count),
            _ => None,
        })
        .collect();
    if !hits.is_empty() {
        let level = visibility_level(&hits, thresholds)?;
        let total: u128 = hits.iter().map(|&h| h as u128).sum();
        return Ok(Some(Suggestion {
            level,
            rationale: format!(
                "mean of {} search hit count(s) is {:.1} (thresholds {}/{}/{})",
                hits.len(),
                total as f64 / hits.len() as f64,
                thresholds.lower,
                thresholds.middle,
                thresholds.upper
            ),
        }));
    }

    let sizes: Vec<u64> = records
        .iter()
        .filter_map(|r| match r.payload {
            EvidencePayload::Catalog { approx_size, .. }
            | EvidencePayload::Priori { approx_size, .. } => approx_size,
            _ => None,
        })
        .collect();
    if !sizes.is_empty() {
        let total = sizes.iter().fold(0u64, |acc, &s| acc.saturating_add(s));
        let level = NormalizedLevel::Known(normalize_count(total, ruleset));
        return Ok(Some(Suggestion {
            level,
            rationale: format!(
                "catalog size total {total} from {} record(s) (count thresholds {}/{})",
                sizes.len(),
                ruleset.count_thresholds.0,
                ruleset.count_thresholds.1
            ),
        }));
    }
    Ok(None)
}
