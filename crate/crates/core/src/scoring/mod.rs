//! Availability normalization, section scores and readiness classification.
//!
//! Rules are evaluated in a fixed order over per-section mean levels and the
//! first that holds selects the category:
//!
//! 1. Flourished: every section known and scoring at least `flourished_level`.
//! 2. Mature: every section known and scoring at least `mature_level`.
//! 3. Premature: among sections with a known score, the fraction scoring at
//!    least `premature_level` reaches `nearly_all_fraction`.
//! 4. Void: at most `void_max_core_sections_with_evidence` core sections
//!    score above zero, and the mean of known core scores is at most
//!    `void_max_mean_core_score`.
//! 5. Infancy otherwise.
//!
//! Importance never enters classification.

mod rational;
mod ruleset;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::assessment::{Assessment, Availability, ItemPath, Level, SectionAssessment};
use crate::error::{Error, Result};
use crate::names::names_match;
use crate::schema::Framework;

pub use rational::Rational;
pub use ruleset::{default_ruleset, Calibration, Ruleset};

/// An availability value mapped onto the 0..=3 scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "level", rename_all = "snake_case")]
pub enum NormalizedLevel {
    Known(Level),
    Unknown,
    NotApplicable,
}

impl NormalizedLevel {
    pub fn known(self) -> Option<Level> {
        match self {
            NormalizedLevel::Known(l) => Some(l),
            _ => None,
        }
    }
}

impl fmt::Display for NormalizedLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizedLevel::Known(l) => write!(f, "{l}"),
            NormalizedLevel::Unknown => f.write_str("unknown"),
            NormalizedLevel::NotApplicable => f.write_str("NA"),
        }
    }
}

pub fn normalize_count(n: u64, r: &Ruleset) -> Level {
    let (t1, t2) = r.count_thresholds;
    match n {
        0 => Level::NONE,
        n if n <= t1 => Level::AVAILABLE,
        n if n <= t2 => Level::CONSIDERABLE,
        _ => Level::VAST,
    }
}

/// Open-ended counts normalize by their lower bound; see [`is_lower_bound`].
pub fn normalize_availability(a: Availability, r: &Ruleset) -> NormalizedLevel {
    match a {
        Availability::Unknown => NormalizedLevel::Unknown,
        Availability::NotApplicable => NormalizedLevel::NotApplicable,
        Availability::Enumerated(level) => NormalizedLevel::Known(level),
        Availability::Count(n) | Availability::AtLeastCount(n) => {
            NormalizedLevel::Known(normalize_count(n, r))
        }
    }
}

pub fn is_lower_bound(a: Availability) -> bool {
    matches!(a, Availability::AtLeastCount(_))
}

/// Mean of the known normalized levels; `None` when no item is known.
pub fn section_score(s: &SectionAssessment, r: &Ruleset) -> Option<Rational> {
    let (sum, known) = s
        .items
        .iter()
        .filter_map(|i| normalize_availability(i.availability, r).known())
        .fold((0i64, 0i64), |(sum, n), l| (sum + l.get() as i64, n + 1));
    (known > 0).then(|| Rational::new(sum, known))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ReadinessCategory {
    Void,
    Infancy,
    Premature,
    Mature,
    Flourished,
}

impl ReadinessCategory {
    pub const ALL: [ReadinessCategory; 5] = [
        ReadinessCategory::Void,
        ReadinessCategory::Infancy,
        ReadinessCategory::Premature,
        ReadinessCategory::Mature,
        ReadinessCategory::Flourished,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReadinessCategory::Void => "Void",
            ReadinessCategory::Infancy => "Infancy",
            ReadinessCategory::Premature => "Premature",
            ReadinessCategory::Mature => "Mature",
            ReadinessCategory::Flourished => "Flourished",
        }
    }
}

impl fmt::Display for ReadinessCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReadinessCategory {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown readiness category '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionScore {
    pub name: String,
    pub core: bool,
    pub score: Option<Rational>,
    pub known_items: usize,
    /// Items whose level came from an open-ended count.
    pub lower_bound_items: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Selected,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleEvaluation {
    pub rule: ReadinessCategory,
    pub operands: Vec<(String, String)>,
    pub outcome: Outcome,
}

impl fmt::Display for RuleEvaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outcome = match self.outcome {
            Outcome::Selected => "selected",
            Outcome::Rejected => "rejected",
        };
        write!(f, "{:<10} {outcome:<8}", self.rule.as_str())?;
        let operands: Vec<String> = self
            .operands
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, " {}", operands.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub category: ReadinessCategory,
    /// One entry per framework section, in framework order.
    pub section_scores: Vec<SectionScore>,
    pub core_evidence_count: usize,
    pub mean_core_score: Rational,
    /// Rules in evaluation order; the last one is the selected rule.
    pub trace: Vec<RuleEvaluation>,
}

impl Classification {
    pub fn section(&self, name: &str) -> Option<&SectionScore> {
        self.section_scores
            .iter()
            .find(|s| names_match(&s.name, name))
    }

    pub fn selected_rule(&self) -> &RuleEvaluation {
        self.trace
            .iter()
            .find(|r| r.outcome == Outcome::Selected)
            .expect("classification trace has a selected rule")
    }
}

fn show(score: Option<Rational>) -> String {
    score.map_or_else(|| "unknown".to_string(), |s| s.to_string())
}

pub fn classify(a: &Assessment, fw: &Framework, r: &Ruleset) -> Result<Classification> {
    let section_scores: Vec<SectionScore> = fw
        .sections
        .iter()
        .map(|def| {
            let assessed = a.sections.iter().find(|s| names_match(&s.name, &def.name));
            let (score, known_items, lower_bound_items) = match assessed {
                Some(s) => (
                    section_score(s, r),
                    s.items
                        .iter()
                        .filter(|i| normalize_availability(i.availability, r).known().is_some())
                        .count(),
                    s.items
                        .iter()
                        .filter(|i| is_lower_bound(i.availability))
                        .map(|i| i.name.clone())
                        .collect(),
                ),
                None => (None, 0, Vec::new()),
            };
            SectionScore {
                name: def.name.clone(),
                core: def.core,
                score,
                known_items,
                lower_bound_items,
            }
        })
        .collect();

    let known: Vec<Rational> = section_scores.iter().filter_map(|s| s.score).collect();
    if known.is_empty() {
        return Err(Error::InsufficientData);
    }
    let all_known = known.len() == section_scores.len();
    let min_score = *known.iter().min().expect("non-empty");

    let core_known: Vec<Rational> = section_scores
        .iter()
        .filter(|s| s.core)
        .filter_map(|s| s.score)
        .collect();
    let core_evidence_count = core_known.iter().filter(|s| !s.is_zero()).count();
    let mean_core_score = if core_known.is_empty() {
        Rational::ZERO
    } else {
        Rational(
            core_known
                .iter()
                .map(|s| s.0)
                .sum::<num_rational::Ratio<i64>>()
                / core_known.len() as i64,
        )
    };

    let mut trace = Vec::new();
    let mut decide = |rule: ReadinessCategory, holds: bool, operands: Vec<(&str, String)>| {
        trace.push(RuleEvaluation {
            rule,
            operands: operands
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            outcome: if holds {
                Outcome::Selected
            } else {
                Outcome::Rejected
            },
        });
        holds
    };

    let category = 'rules: {
        for (rule, level, level_name) in [
            (
                ReadinessCategory::Flourished,
                r.flourished_level,
                "flourished_level",
            ),
            (ReadinessCategory::Mature, r.mature_level, "mature_level"),
        ] {
            let holds = all_known && min_score >= level;
            if decide(
                rule,
                holds,
                vec![
                    ("all_sections_known", all_known.to_string()),
                    ("min_known_score", min_score.to_string()),
                    (level_name, level.to_string()),
                ],
            ) {
                break 'rules rule;
            }
        }

        let reaching = known.iter().filter(|s| **s >= r.premature_level).count();
        let fraction = Rational::new(reaching as i64, known.len() as i64);
        if decide(
            ReadinessCategory::Premature,
            fraction >= r.nearly_all_fraction,
            vec![
                (
                    "sections_at_premature_level",
                    format!("{reaching}/{}", known.len()),
                ),
                ("fraction", fraction.to_string()),
                ("premature_level", r.premature_level.to_string()),
                ("nearly_all_fraction", r.nearly_all_fraction.to_string()),
            ],
        ) {
            break 'rules ReadinessCategory::Premature;
        }

        let void = core_evidence_count <= r.void_max_core_sections_with_evidence
            && mean_core_score <= r.void_max_mean_core_score;
        if decide(
            ReadinessCategory::Void,
            void,
            vec![
                (
                    "core_sections_with_evidence",
                    core_evidence_count.to_string(),
                ),
                (
                    "void_max_core_sections_with_evidence",
                    r.void_max_core_sections_with_evidence.to_string(),
                ),
                ("mean_core_score", mean_core_score.to_string()),
                (
                    "void_max_mean_core_score",
                    r.void_max_mean_core_score.to_string(),
                ),
            ],
        ) {
            break 'rules ReadinessCategory::Void;
        }

        decide(
            ReadinessCategory::Infancy,
            true,
            vec![(
                "known_sections",
                format!("{}/{}", known.len(), section_scores.len()),
            )],
        );
        ReadinessCategory::Infancy
    };

    Ok(Classification {
        category,
        section_scores,
        core_evidence_count,
        mean_core_score,
        trace,
    })
}

/// A hypothetical availability for one item, written `Section/Item=kind:value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Override {
    pub path: ItemPath,
    pub availability: Availability,
}

impl FromStr for Override {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = |msg: String| Error::InvalidOverride(s.to_string(), msg);
        let (path, value) = s
            .rsplit_once('=')
            .ok_or_else(|| invalid("expected Section/Item=kind:value".into()))?;
        Ok(Override {
            path: path.parse().map_err(invalid)?,
            availability: value.parse().map_err(invalid)?,
        })
    }
}

/// Classifies a copy of `a` with the overrides applied.
pub fn what_if(
    a: &Assessment,
    overrides: &[Override],
    fw: &Framework,
    r: &Ruleset,
) -> Result<Classification> {
    let mut modified = a.clone();
    for o in overrides {
        modified
            .item_mut(&o.path)
            .ok_or_else(|| Error::UnknownPath(o.path.clone()))?
            .availability = o.availability;
    }
    classify(&modified, fw, r)
}

/// Human-readable score, e.g. `7/3 (2.33)`.
pub fn describe_score(score: Option<Rational>) -> String {
    match score {
        Some(s) if s.to_decimal_string().is_none() => format!("{s} ({:.2})", s.to_f64()),
        other => show(other),
    }
}
