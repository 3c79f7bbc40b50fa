//! Readiness assessment for digital-humanities infrastructure.
//!
//! A [`Framework`] lists indicator items grouped into sections. An
//! [`Assessment`] fills in each item's importance and availability for one
//! community and carries the evidence ledger behind those values. The
//! [`scoring`] module classifies an assessment into a [`ReadinessCategory`]
//! with a rule-by-rule trace, and [`reporting`] renders indicator tables,
//! gap rankings and comparisons.

pub mod assessment;
pub mod error;
pub mod evidence;
pub mod names;
pub mod reporting;
pub mod schema;
pub mod scoring;
pub mod violation;

pub use assessment::{
    parse_assessment, serialize_assessment, validate_assessment, Assessment, Availability,
    FrameworkRef, Importance, ItemAssessment, ItemPath, Level, SectionAssessment, SubjectInfo,
};
pub use error::{Error, ParseError, Result};
pub use evidence::{
    attach_evidence, import_search_log, interview_distribution, suggest_availability,
    visibility_level, EvidencePayload, EvidenceRecord, Relevance, VisibilityThresholds,
};
pub use reporting::{
    compare, gap_report, render_indicator_table, ComparisonReport, Format, GapEntry,
};
pub use schema::{
    canonical_framework, lookup_item, validate_framework, Framework, ItemDef, SectionDef,
};
pub use scoring::{
    classify, default_ruleset, normalize_availability, section_score, what_if, Classification,
    NormalizedLevel, Override, Rational, ReadinessCategory, Ruleset,
};
pub use violation::{RuleId, Violation};
