use std::collections::HashSet;

use super::Assessment;
use crate::names::name_key;
use crate::schema::Framework;
use crate::violation::{RuleId, Violation};

/// Checks `a` against `fw`. An empty result means the assessment may be
/// scored and rendered.
pub fn validate_assessment(a: &Assessment, fw: &Framework) -> Vec<Violation> {
    let mut out = Vec::new();

    if a.framework_id() != fw.id {
        out.push(Violation::new(
            "framework",
            RuleId::FrameworkMismatch,
            format!(
                "assessment uses '{}' but was checked against '{}'",
                a.framework_id(),
                fw.id
            ),
        ));
    }
    if a.subject.community.trim().is_empty() {
        out.push(Violation::new(
            "subject/community",
            RuleId::EmptySubjectField,
            "community is empty",
        ));
    }
    if a.subject.language.trim().is_empty() {
        out.push(Violation::new(
            "subject/language",
            RuleId::EmptySubjectField,
            "language is empty",
        ));
    }

    let ledger: HashSet<&str> = a.evidence.iter().map(|r| r.id.as_str()).collect();
    let mut seen_ids = HashSet::new();
    for record in &a.evidence {
        let path = format!("evidence/{}", record.id);
        if !seen_ids.insert(record.id.as_str()) {
            out.push(Violation::new(
                &path,
                RuleId::DuplicateEvidenceId,
                "evidence id appears more than once",
            ));
        }
        if let Some(target) = &record.item_ref {
            if crate::schema::lookup_item(fw, &target.section, &target.item).is_none() {
                out.push(Violation::new(
                    &path,
                    RuleId::UnknownEvidenceTarget,
                    format!("evidence refers to unknown item '{target}'"),
                ));
            }
        }
    }

    let mut seen_sections = HashSet::new();
    for section in &a.sections {
        let path = format!("sections/{}", section.name);
        let def = fw.section(&section.name);
        if def.is_none() {
            out.push(Violation::new(
                &path,
                RuleId::UnknownSection,
                format!("framework '{}' has no section '{}'", fw.id, section.name),
            ));
        }
        if !seen_sections.insert(name_key(&section.name)) {
            out.push(Violation::new(
                &path,
                RuleId::DuplicateSection,
                "section appears more than once",
            ));
        }

        let mut seen_items = HashSet::new();
        for item in &section.items {
            let item_path = format!("{path}/items/{}", item.name);
            if let Some(def) = def {
                if def.item(&item.name).is_none() {
                    out.push(Violation::new(
                        &item_path,
                        RuleId::UnknownItem,
                        format!("section '{}' has no item '{}'", def.name, item.name),
                    ));
                }
            }
            if !seen_items.insert(name_key(&item.name)) {
                out.push(Violation::new(
                    &item_path,
                    RuleId::DuplicateItem,
                    "item appears more than once",
                ));
            }
            let mut seen_refs = HashSet::new();
            for id in &item.evidence_refs {
                if !seen_refs.insert(id.as_str()) {
                    out.push(Violation::new(
                        &item_path,
                        RuleId::DuplicateEvidenceRef,
                        format!("evidence '{id}' referenced twice"),
                    ));
                }
                if !ledger.contains(id.as_str()) {
                    out.push(Violation::new(
                        &item_path,
                        RuleId::DanglingEvidence,
                        format!("evidence '{id}' is not in the ledger"),
                    ));
                }
            }
        }
    }
    out
}
