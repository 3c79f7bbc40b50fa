use std::fmt;

use serde::Serialize;

/// Which structural rule a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    EmptyName,
    EmptyFramework,
    EmptySection,
    DuplicateSection,
    DuplicateItem,
    FrameworkMismatch,
    EmptySubjectField,
    UnknownSection,
    UnknownItem,
    DuplicateEvidenceRef,
    DanglingEvidence,
    DuplicateEvidenceId,
    UnknownEvidenceTarget,
}

impl RuleId {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::EmptyName => "empty-name",
            RuleId::EmptyFramework => "empty-framework",
            RuleId::EmptySection => "empty-section",
            RuleId::DuplicateSection => "duplicate-section",
            RuleId::DuplicateItem => "duplicate-item",
            RuleId::FrameworkMismatch => "framework-mismatch",
            RuleId::EmptySubjectField => "empty-subject-field",
            RuleId::UnknownSection => "unknown-section",
            RuleId::UnknownItem => "unknown-item",
            RuleId::DuplicateEvidenceRef => "duplicate-evidence-ref",
            RuleId::DanglingEvidence => "dangling-evidence",
            RuleId::DuplicateEvidenceId => "duplicate-evidence-id",
            RuleId::UnknownEvidenceTarget => "unknown-evidence-target",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A broken invariant, reported as data rather than as an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Slash-separated location, e.g. `sections/Tools/items/Online Catalog`.
    pub path: String,
    pub rule: RuleId,
    pub message: String,
}

impl Violation {
    pub fn new(path: impl Into<String>, rule: RuleId, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            rule,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: [{}] {}", self.path, self.rule, self.message)
    }
}
