//! Framework structure: sections, items and the canonical six-section rubric.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::names::{name_key, names_match};
use crate::violation::{RuleId, Violation};

/// Identifier of the built-in framework.
pub const CANONICAL_FRAMEWORK_ID: &str = "dhuraf-canonical-v1";

/// A rubric: an ordered list of sections, each holding ordered items.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Framework {
    pub id: String,
    pub sections: Vec<SectionDef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionDef {
    pub name: String,
    /// Set when the section's items directly evidence DH activity rather than
    /// the enabling environment. Drives the Void rule of the classifier.
    #[serde(default)]
    pub core: bool,
    pub items: Vec<ItemDef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ItemDef {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub measurement_hint: MeasurementHint,
}

/// The kind of availability value an item expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementHint {
    Count,
    Enumerated,
    Either,
}

impl Framework {
    pub fn section(&self, name: &str) -> Option<&SectionDef> {
        self.sections.iter().find(|s| names_match(&s.name, name))
    }

    pub fn section_index(&self, name: &str) -> Option<usize> {
        self.sections
            .iter()
            .position(|s| names_match(&s.name, name))
    }

    pub fn item_count(&self) -> usize {
        self.sections.iter().map(|s| s.items.len()).sum()
    }

    pub fn core_section_count(&self) -> usize {
        self.sections.iter().filter(|s| s.core).count()
    }

    /// Iterates `(section, item)` pairs in framework order.
    pub fn items(&self) -> impl Iterator<Item = (&SectionDef, &ItemDef)> {
        self.sections
            .iter()
            .flat_map(|s| s.items.iter().map(move |i| (s, i)))
    }
}

impl SectionDef {
    pub fn item(&self, name: &str) -> Option<&ItemDef> {
        self.items.iter().find(|i| names_match(&i.name, name))
    }

    pub fn item_index(&self, name: &str) -> Option<usize> {
        self.items.iter().position(|i| names_match(&i.name, name))
    }
}

/// Case-insensitive, whitespace-normalized lookup of one item definition.
pub fn lookup_item<'a>(
    fw: &'a Framework,
    section_name: &str,
    item_name: &str,
) -> Option<&'a ItemDef> {
    fw.section(section_name)?.item(item_name)
}

type ItemTable = &'static [(&'static str, &'static str, MeasurementHint)];

const CANONICAL_SECTIONS: &[(&str, bool, ItemTable)] = {
    use MeasurementHint::*;
    &[
        (
            "DHuBase",
            true,
            &[
                ("Digitized Books", "Digitized books held in accessible collections.", Either),
                ("Digitized Photo Archives", "Digitized photographic archives.", Either),
                ("Digitized Sound Archives", "Digitized audio archives.", Either),
            ],
        ),
        (
            "Tools",
            true,
            &[
                (
                    "Digital Asset Management System",
                    "Systems managing digital assets specific to the community's language or culture.",
                    Enumerated,
                ),
                ("Online Catalog", "Online catalogs specialized for the community.", Enumerated),
                ("Video and Film Analyzer", "Tools for analyzing community-specific video and film.", Enumerated),
            ],
        ),
        (
            "Language",
            false,
            &[
                ("Visibility on the Internet", "Web presence of the language, e.g. hit counts for sampled text.", Either),
                ("Computability", "Maturity of language technology for the language.", Enumerated),
                ("BLARK Status", "Whether a basic language resource kit exists for the language.", Enumerated),
            ],
        ),
        (
            "Digital Media",
            false,
            &[
                ("News Agency", "News agencies producing digital content.", Count),
                ("News Agency Website", "News agency websites.", Count),
                ("Satellite TV", "Satellite TV channels.", Count),
                ("Satellite TV Website", "Satellite TV websites.", Count),
                ("Local TV", "Local TV stations whose output can be digitized.", Count),
                ("Social Media", "Presence and magnitude on social media.", Either),
                ("Blog", "Blogs in the language.", Either),
                ("Wiki", "Wikis in the language.", Either),
            ],
        ),
        (
            "Education",
            true,
            &[
                ("Academic Awareness", "Awareness of DH among academics, by survey or interview.", Either),
                ("Active Institution", "Institutions active in DH.", Count),
                ("Academic Program-UG", "DH programs at undergraduate level.", Count),
                ("Academic Program-Master", "DH programs at master level.", Count),
                ("Academic Program-PhD", "DH programs at doctorate level.", Count),
            ],
        ),
        (
            "Research",
            true,
            &[
                ("Projects-Finished", "Completed DH research projects.", Count),
                ("Projects-Ongoing", "Ongoing DH research projects.", Count),
                ("Projects-Canceled", "Canceled DH research projects.", Count),
                ("Cumulative Fund", "Cumulative spending on DH research to date.", Either),
            ],
        ),
    ]
};

/// The built-in six-section framework with its 26 items.
pub fn canonical_framework() -> Framework {
    Framework {
        id: CANONICAL_FRAMEWORK_ID.to_string(),
        sections: CANONICAL_SECTIONS
            .iter()
            .map(|(name, core, items)| SectionDef {
                name: (*name).to_string(),
                core: *core,
                items: items
                    .iter()
                    .map(|(name, description, hint)| ItemDef {
                        name: (*name).to_string(),
                        description: (*description).to_string(),
                        measurement_hint: *hint,
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Resolves a framework id against the built-in frameworks.
pub fn builtin_framework(id: &str) -> Option<Framework> {
    (id == CANONICAL_FRAMEWORK_ID).then(canonical_framework)
}

pub fn validate_framework(fw: &Framework) -> Vec<Violation> {
    let mut out = Vec::new();
    if fw.id.trim().is_empty() {
        out.push(Violation::new(
            "id",
            RuleId::EmptyName,
            "framework id is empty",
        ));
    }
    if fw.sections.is_empty() {
        out.push(Violation::new(
            "sections",
            RuleId::EmptyFramework,
            "framework has no sections",
        ));
    }

    let mut seen_sections = HashSet::new();
    for section in &fw.sections {
        let path = format!("sections/{}", section.name);
        if section.name.trim().is_empty() {
            out.push(Violation::new(
                &path,
                RuleId::EmptyName,
                "section name is empty",
            ));
        }
        if !seen_sections.insert(name_key(&section.name)) {
            out.push(Violation::new(
                &path,
                RuleId::DuplicateSection,
                format!("section name '{}' appears more than once", section.name),
            ));
        }
        if section.items.is_empty() {
            out.push(Violation::new(
                &path,
                RuleId::EmptySection,
                "section has no items",
            ));
        }

        let mut seen_items = HashSet::new();
        for item in &section.items {
            let item_path = format!("{path}/items/{}", item.name);
            if item.name.trim().is_empty() {
                out.push(Violation::new(
                    &item_path,
                    RuleId::EmptyName,
                    "item name is empty",
                ));
            }
            if !seen_items.insert(name_key(&item.name)) {
                out.push(Violation::new(
                    &item_path,
                    RuleId::DuplicateItem,
                    format!(
                        "item name '{}' appears more than once in section",
                        item.name
                    ),
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_shape() {
        let fw = canonical_framework();
        assert_eq!(fw.id, "dhuraf-canonical-v1");
        assert_eq!(fw.sections.len(), 6);
        let sizes: Vec<usize> = fw.sections.iter().map(|s| s.items.len()).collect();
        assert_eq!(sizes, vec![3, 3, 3, 8, 5, 4]);
        assert_eq!(fw.item_count(), 26);
        assert_eq!(fw.core_section_count(), 4);

        let research = fw.section("Research").unwrap();
        assert_eq!(research.items.len(), 4);
        assert_eq!(research.items.last().unwrap().name, "Cumulative Fund");

        let core: Vec<&str> = fw
            .sections
            .iter()
            .filter(|s| s.core)
            .map(|s| s.name.as_str())
            .collect();
        assert_eq!(core, vec!["DHuBase", "Tools", "Education", "Research"]);
    }

    #[test]
    fn canonical_is_constant_and_valid() {
        assert_eq!(canonical_framework(), canonical_framework());
        assert!(validate_framework(&canonical_framework()).is_empty());
    }

    #[test]
    fn lookup_normalizes_names() {
        let fw = canonical_framework();
        let item = lookup_item(&fw, "Language", "Computability").unwrap();
        assert_eq!(item.name, "Computability");
        assert_eq!(lookup_item(&fw, "language", " computability "), Some(item));
        assert_eq!(lookup_item(&fw, "Language", "Grammar Checker"), None);
        assert_eq!(lookup_item(&fw, "Nope", "Computability"), None);
        assert_eq!(
            lookup_item(&fw, "research", "Project-Finished").map(|i| i.name.as_str()),
            Some("Projects-Finished")
        );
    }

    #[test]
    fn duplicate_section_reported_once() {
        let mut fw = canonical_framework();
        let mut dup = fw.sections[1].clone();
        dup.name = "TOOLS".into();
        fw.sections.push(dup);
        let v = validate_framework(&fw);
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].rule, RuleId::DuplicateSection);
    }

    #[test]
    fn empty_section_reported() {
        let mut fw = canonical_framework();
        fw.sections.push(SectionDef {
            name: "Empty".into(),
            core: false,
            items: vec![],
        });
        let v = validate_framework(&fw);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, RuleId::EmptySection);
        assert_eq!(v[0].path, "sections/Empty");
    }

    #[test]
    fn duplicate_item_and_empty_framework() {
        let mut fw = canonical_framework();
        let first = fw.sections[0].items[0].clone();
        fw.sections[0].items.push(first);
        let v = validate_framework(&fw);
        assert_eq!(
            v.iter().map(|v| v.rule).collect::<Vec<_>>(),
            vec![RuleId::DuplicateItem]
        );

        let empty = Framework {
            id: "x".into(),
            sections: vec![],
        };
        assert_eq!(validate_framework(&empty)[0].rule, RuleId::EmptyFramework);
    }

    #[test]
    fn measurement_hint_rejects_other_tokens() {
        let ok: ItemDef =
            serde_json::from_str(r#"{"name":"A","measurement_hint":"either"}"#).unwrap();
        assert_eq!(ok.measurement_hint, MeasurementHint::Either);
        assert!(
            serde_json::from_str::<ItemDef>(r#"{"name":"A","measurement_hint":"ratio"}"#).is_err()
        );
    }
}
