//! The `.dhuraf` JSON document format.
//!
//! Canonical form: keys in declaration order, sections and items in
//! framework order, two-space indentation and a trailing newline. Optional
//! fields (`region`, `assessor`, `notes`, item `evidence`) are omitted when
//! empty; `importance` is always written, as `null` when undecided.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Assessment, FrameworkRef, SectionAssessment, SubjectInfo};
use crate::error::ParseError;
use crate::evidence::EvidenceRecord;

pub const DOCUMENT_VERSION: &str = "1";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DocumentIn {
    #[serde(default)]
    dhuraf_version: Option<String>,
    framework: FrameworkRef,
    subject: SubjectInfo,
    #[serde(default)]
    sections: Vec<SectionAssessment>,
    #[serde(default)]
    evidence: Vec<EvidenceRecord>,
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    dhuraf_version: &'static str,
    framework: &'a FrameworkRef,
    subject: &'a SubjectInfo,
    sections: &'a [SectionAssessment],
    evidence: &'a [EvidenceRecord],
}

pub fn parse_assessment(bytes: &[u8]) -> Result<Assessment, ParseError> {
    let doc: DocumentIn = serde_json::from_slice(bytes)?;

    if let Some(version) = &doc.dhuraf_version {
        if version != DOCUMENT_VERSION {
            return Err(ParseError::semantic(format!(
                "unsupported dhuraf_version '{version}' (expected '{DOCUMENT_VERSION}')"
            )));
        }
    }

    let mut ids = HashSet::new();
    for record in &doc.evidence {
        if !ids.insert(record.id.as_str()) {
            return Err(ParseError::semantic(format!(
                "duplicate evidence id '{}'",
                record.id
            )));
        }
    }

    Ok(Assessment {
        framework: doc.framework,
        subject: doc.subject,
        sections: doc.sections,
        evidence: doc.evidence,
    })
}

pub fn serialize_assessment(a: &Assessment) -> Vec<u8> {
    let ordered;
    let a = match a.framework.resolve() {
        Ok(fw) => {
            ordered = a.clone().canonical_order(&fw);
            &ordered
        }
        Err(_) => a,
    };
    let doc = DocumentOut {
        dhuraf_version: DOCUMENT_VERSION,
        framework: &a.framework,
        subject: &a.subject,
        sections: &a.sections,
        evidence: &a.evidence,
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("assessment serializes to JSON");
    out.push(b'\n');
    out
}
