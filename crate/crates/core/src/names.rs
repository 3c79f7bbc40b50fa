//! Name matching for sections and items.
//!
//! Names compare case-insensitively with runs of whitespace collapsed to a
//! single space. A small alias table maps spellings that appear in
//! hand-transcribed tables onto the canonical item names.

/// Spelling variants accepted for canonical names, already in normalized form.
const ALIASES: &[(&str, &str)] = &[
    ("project-finished", "projects-finished"),
    ("project-ongoing", "projects-ongoing"),
    ("project-canceled", "projects-canceled"),
    ("project-cancelled", "projects-canceled"),
    ("projects-cancelled", "projects-canceled"),
    ("social media (twitter, facebook, ...)", "social media"),
    ("digital medeia", "digital media"),
];

/// Lowercases and collapses whitespace, without alias resolution.
pub fn normalize(name: &str) -> String {
    name.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Comparison key for a section or item name.
pub fn name_key(name: &str) -> String {
    let normalized = normalize(name);
    match ALIASES.iter().find(|(alias, _)| *alias == normalized) {
        Some((_, canonical)) => (*canonical).to_string(),
        None => normalized,
    }
}

pub fn names_match(a: &str, b: &str) -> bool {
    name_key(a) == name_key(b)
}
