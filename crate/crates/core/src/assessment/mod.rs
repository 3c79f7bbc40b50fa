//! One community's filled-in indicator table plus its evidence ledger.

mod document;
mod validate;

use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::EvidenceRecord;
use crate::names::names_match;
use crate::schema::{builtin_framework, Framework};

pub use document::{parse_assessment, serialize_assessment, DOCUMENT_VERSION};
pub use validate::validate_assessment;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assessment {
    pub framework: FrameworkRef,
    pub subject: SubjectInfo,
    pub sections: Vec<SectionAssessment>,
    pub evidence: Vec<EvidenceRecord>,
}

/// Either the id of a built-in framework or a framework carried inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrameworkRef {
    Id(String),
    Inline(Framework),
}

impl FrameworkRef {
    pub fn id(&self) -> &str {
        match self {
            FrameworkRef::Id(id) => id,
            FrameworkRef::Inline(fw) => &fw.id,
        }
    }

    pub fn resolve(&self) -> Result<Framework> {
        match self {
            FrameworkRef::Id(id) => {
                builtin_framework(id).ok_or_else(|| Error::UnknownFramework(id.clone()))
            }
            FrameworkRef::Inline(fw) => Ok(fw.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubjectInfo {
    pub community: String,
    pub language: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assessor: Option<String>,
    pub date: NaiveDate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionAssessment {
    pub name: String,
    #[serde(default)]
    pub items: Vec<ItemAssessment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ItemAssessment {
    pub name: String,
    #[serde(default)]
    pub importance: Importance,
    #[serde(default)]
    pub availability: Availability,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
    #[serde(rename = "evidence", default, skip_serializing_if = "Vec::is_empty")]
    pub evidence_refs: Vec<String>,
}

impl ItemAssessment {
    pub fn new(
        name: impl Into<String>,
        importance: Importance,
        availability: Availability,
    ) -> Self {
        Self {
            name: name.into(),
            importance,
            availability,
            notes: String::new(),
            evidence_refs: Vec::new(),
        }
    }
}

/// Availability level on the 0..=3 scale (not available, available,
/// considerable, vast).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Level(u8);

impl Level {
    pub const NONE: Level = Level(0);
    pub const AVAILABLE: Level = Level(1);
    pub const CONSIDERABLE: Level = Level(2);
    pub const VAST: Level = Level(3);
    pub const MAX: Level = Level::VAST;

    pub fn new(level: u8) -> Option<Level> {
        (level <= 3).then_some(Level(level))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Level> {
        (0..=3).map(Level)
    }
}

impl TryFrom<u8> for Level {
    type Error = String;

    fn try_from(value: u8) -> std::result::Result<Self, Self::Error> {
        Level::new(value).ok_or_else(|| format!("availability level {value} out of range 0..=3"))
    }
}

impl From<Level> for u8 {
    fn from(level: Level) -> u8 {
        level.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Importance, written as one to three plus signs or left undecided.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(try_from = "Option<u8>", into = "Option<u8>")]
pub enum Importance {
    #[default]
    Undecided,
    Level(u8),
}

impl Importance {
    pub fn level(degree: u8) -> Option<Importance> {
        (1..=3)
            .contains(&degree)
            .then_some(Importance::Level(degree))
    }

    /// Degree in 0..=3, with 0 meaning undecided.
    pub fn degree(self) -> u8 {
        match self {
            Importance::Undecided => 0,
            Importance::Level(d) => d,
        }
    }

    pub fn plus_signs(self) -> String {
        "+".repeat(self.degree() as usize)
    }
}

impl TryFrom<Option<u8>> for Importance {
    type Error = String;

    fn try_from(value: Option<u8>) -> std::result::Result<Self, Self::Error> {
        match value {
            None => Ok(Importance::Undecided),
            Some(d) => {
                Importance::level(d).ok_or_else(|| format!("importance {d} out of range 1..=3"))
            }
        }
    }
}

impl From<Importance> for Option<u8> {
    fn from(value: Importance) -> Self {
        match value {
            Importance::Undecided => None,
            Importance::Level(d) => Some(d),
        }
    }
}

/// Observed availability of an item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "AvailabilityRepr", into = "AvailabilityRepr")]
pub enum Availability {
    /// Blank cell: nothing is known either way.
    #[default]
    Unknown,
    NotApplicable,
    Enumerated(Level),
    Count(u64),
    /// An open-ended count such as "10+". Always at least 1.
    AtLeastCount(u64),
}

impl Availability {
    pub fn at_least(n: u64) -> Option<Availability> {
        (n >= 1).then_some(Availability::AtLeastCount(n))
    }

    pub fn enumerated(level: u8) -> Option<Availability> {
        Level::new(level).map(Availability::Enumerated)
    }

    /// Rendering used in indicator tables: digit, `n+`, `NA`, or empty.
    pub fn table_cell(self) -> String {
        match self {
            Availability::Unknown => String::new(),
            Availability::NotApplicable => "NA".into(),
            Availability::Enumerated(level) => level.to_string(),
            Availability::Count(n) => n.to_string(),
            Availability::AtLeastCount(n) => format!("{n}+"),
        }
    }
}

/// `kind:value` notation used on the command line, e.g. `enumerated:2`,
/// `count:40`, `at_least:10`, `na`, `unknown`.
impl FromStr for Availability {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (kind, value) = match s.split_once(':') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => (s.trim(), None),
        };
        let number = |v: Option<&str>| -> std::result::Result<u64, String> {
            let v = v.ok_or_else(|| format!("'{kind}' needs a value"))?;
            v.parse::<u64>()
                .map_err(|_| format!("'{v}' is not a non-negative integer"))
        };
        let no_value = |a: Availability| match value {
            None => Ok(a),
            Some(_) => Err(format!("'{kind}' takes no value")),
        };
        match kind.to_ascii_lowercase().as_str() {
            "unknown" => no_value(Availability::Unknown),
            "na" => no_value(Availability::NotApplicable),
            "enumerated" => {
                let n = number(value)?;
                u8::try_from(n)
                    .ok()
                    .and_then(Level::new)
                    .map(Availability::Enumerated)
                    .ok_or_else(|| format!("availability level {n} out of range 0..=3"))
            }
            "count" => Ok(Availability::Count(number(value)?)),
            "at_least" => {
                let n = number(value)?;
                Availability::at_least(n)
                    .ok_or_else(|| "at_least count must be at least 1".to_string())
            }
            other => Err(format!("unknown availability kind '{other}'")),
        }
    }
}

impl fmt::Display for Availability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Availability::Unknown => f.write_str("unknown"),
            Availability::NotApplicable => f.write_str("na"),
            Availability::Enumerated(l) => write!(f, "enumerated:{l}"),
            Availability::Count(n) => write!(f, "count:{n}"),
            Availability::AtLeastCount(n) => write!(f, "at_least:{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum AvailabilityKind {
    Unknown,
    Na,
    Enumerated,
    Count,
    AtLeast,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AvailabilityRepr {
    kind: AvailabilityKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    level: Option<Level>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
}

impl TryFrom<AvailabilityRepr> for Availability {
    type Error = String;

    fn try_from(r: AvailabilityRepr) -> std::result::Result<Self, Self::Error> {
        use AvailabilityKind::*;
        match (r.kind, r.level, r.n) {
            (Unknown, None, None) => Ok(Availability::Unknown),
            (Na, None, None) => Ok(Availability::NotApplicable),
            (Enumerated, Some(level), None) => Ok(Availability::Enumerated(level)),
            (Enumerated, _, _) => {
                Err("'enumerated' availability requires `level` and no `n`".into())
            }
            (Count, None, Some(n)) => Ok(Availability::Count(n)),
            (AtLeast, None, Some(n)) => Availability::at_least(n)
                .ok_or_else(|| "'at_least' availability requires n >= 1".into()),
            (Count | AtLeast, _, _) => Err("count availability requires `n` and no `level`".into()),
            (Unknown | Na, _, _) => {
                Err("'unknown' and 'na' availability take no `level` or `n`".into())
            }
        }
    }
}

impl From<Availability> for AvailabilityRepr {
    fn from(a: Availability) -> Self {
        let (kind, level, n) = match a {
            Availability::Unknown => (AvailabilityKind::Unknown, None, None),
            Availability::NotApplicable => (AvailabilityKind::Na, None, None),
            Availability::Enumerated(l) => (AvailabilityKind::Enumerated, Some(l), None),
            Availability::Count(n) => (AvailabilityKind::Count, None, Some(n)),
            Availability::AtLeastCount(n) => (AvailabilityKind::AtLeast, None, Some(n)),
        };
        AvailabilityRepr { kind, level, n }
    }
}

/// `Section/Item` address of one indicator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ItemPath {
    pub section: String,
    pub item: String,
}

impl ItemPath {
    pub fn new(section: impl Into<String>, item: impl Into<String>) -> Self {
        Self {
            section: section.into(),
            item: item.into(),
        }
    }
}

impl fmt::Display for ItemPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.section, self.item)
    }
}

impl FromStr for ItemPath {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((section, item)) if !section.trim().is_empty() && !item.trim().is_empty() => {
                Ok(ItemPath::new(section.trim(), item.trim()))
            }
            _ => Err(format!("expected 'Section/Item', got '{s}'")),
        }
    }
}

impl Assessment {
    /// An assessment with every framework item present, importance undecided
    /// and availability unknown.
    pub fn blank(framework: FrameworkRef, fw: &Framework, subject: SubjectInfo) -> Self {
        Assessment {
            framework,
            subject,
            sections: fw
                .sections
                .iter()
                .map(|s| SectionAssessment {
                    name: s.name.clone(),
                    items: s
                        .items
                        .iter()
                        .map(|i| {
                            ItemAssessment::new(
                                &i.name,
                                Importance::Undecided,
                                Availability::Unknown,
                            )
                        })
                        .collect(),
                })
                .collect(),
            evidence: Vec::new(),
        }
    }

    pub fn framework_id(&self) -> &str {
        self.framework.id()
    }

    pub fn section(&self, name: &str) -> Option<&SectionAssessment> {
        self.sections.iter().find(|s| names_match(&s.name, name))
    }

    pub fn item(&self, path: &ItemPath) -> Option<&ItemAssessment> {
        self.section(&path.section)?
            .items
            .iter()
            .find(|i| names_match(&i.name, &path.item))
    }

    pub fn item_mut(&mut self, path: &ItemPath) -> Option<&mut ItemAssessment> {
        self.sections
            .iter_mut()
            .find(|s| names_match(&s.name, &path.section))?
            .items
            .iter_mut()
            .find(|i| names_match(&i.name, &path.item))
    }

    pub fn evidence_record(&self, id: &str) -> Option<&EvidenceRecord> {
        self.evidence.iter().find(|r| r.id == id)
    }

    /// Records referenced by the item at `path`, in reference order.
    pub fn evidence_for<'a>(
        &'a self,
        item: &'a ItemAssessment,
    ) -> impl Iterator<Item = &'a EvidenceRecord> {
        item.evidence_refs
            .iter()
            .filter_map(|id| self.evidence_record(id))
    }

    /// Sorts sections and items into framework order. Names unknown to the
    /// framework keep their relative order after the known ones.
    pub fn canonical_order(mut self, fw: &Framework) -> Self {
        self.sections
            .sort_by_key(|s| fw.section_index(&s.name).unwrap_or(usize::MAX));
        for section in &mut self.sections {
            if let Some(def) = fw.section(&section.name) {
                section
                    .items
                    .sort_by_key(|i| def.item_index(&i.name).unwrap_or(usize::MAX));
            }
        }
        self
    }
}
