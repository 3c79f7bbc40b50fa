use serde::Serialize;

use super::{csv_table, json_text, markdown_table, plain_table, Format};
use crate::assessment::{Assessment, ItemPath, Level};
use crate::error::Result;
use crate::schema::Framework;
use crate::scoring::{normalize_availability, Ruleset};

/// Score given to items without a known level.
pub const UNASSESSED: i32 = -1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapEntry {
    pub section: String,
    pub item: String,
    /// 0 when importance is undecided.
    pub importance_degree: u8,
    pub normalized_level: Option<Level>,
    /// `importance × (3 − level)`, or [`UNASSESSED`].
    pub gap_score: i32,
}

impl GapEntry {
    pub fn is_assessed(&self) -> bool {
        self.normalized_level.is_some()
    }
}

/// Ranks every framework item by how far observed availability falls short
/// of asserted importance. Scored items come first, by descending gap with
/// ties in framework order; unassessed items follow in framework order.
pub fn gap_report(a: &Assessment, fw: &Framework, r: &Ruleset) -> Vec<GapEntry> {
    let mut entries: Vec<GapEntry> = fw
        .items()
        .map(|(section, item)| {
            let assessed = a.item(&ItemPath::new(&section.name, &item.name));
            let importance_degree = assessed.map_or(0, |i| i.importance.degree());
            let normalized_level =
                assessed.and_then(|i| normalize_availability(i.availability, r).known());
            let gap_score = match normalized_level {
                Some(level) => {
                    importance_degree as i32 * (Level::MAX.get() as i32 - level.get() as i32)
                }
                None => UNASSESSED,
            };
            GapEntry {
                section: section.name.clone(),
                item: item.name.clone(),
                importance_degree,
                normalized_level,
                gap_score,
            }
        })
        .collect();
    // stable sort keeps framework order among ties
    entries.sort_by_key(|e| (!e.is_assessed(), std::cmp::Reverse(e.gap_score)));
    entries
}

pub fn render_gap_report(entries: &[GapEntry], format: Format) -> Result<String> {
    const HEADER: [&str; 5] = ["Section", "Item", "Importance", "Level", "Gap"];
    if format == Format::Json {
        return Ok(json_text(&entries));
    }
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            vec![
                e.section.clone(),
                e.item.clone(),
                e.importance_degree.to_string(),
                e.normalized_level
                    .map_or_else(String::new, |l| l.to_string()),
                if e.is_assessed() {
                    e.gap_score.to_string()
                } else {
                    "unassessed".to_string()
                },
            ]
        })
        .collect();
    Ok(match format {
        Format::Markdown => markdown_table(&HEADER, &rows),
        Format::Csv => csv_table(&HEADER, &rows),
        Format::Plain => plain_table(&HEADER, &rows),
        Format::Json => unreachable!(),
    })
}

#[cfg(test)]
mod tests {
    use chrono::NaiveDate;

    use super::*;
    use crate::assessment::{Availability, FrameworkRef, Importance, SubjectInfo};
    use crate::schema::canonical_framework;
    use crate::scoring::default_ruleset;

    fn blank() -> Assessment {
        let fw = canonical_framework();
        Assessment::blank(
            FrameworkRef::Id(fw.id.clone()),
            &fw,
            SubjectInfo {
                community: "C".into(),
                language: "L".into(),
                region: None,
                assessor: None,
                date: NaiveDate::from_ymd_opt(2024, 1, 1).unwrap(),
            },
        )
    }

    fn set(
        a: &mut Assessment,
        section: &str,
        item: &str,
        importance: u8,
        availability: Availability,
    ) {
        let i = a.item_mut(&ItemPath::new(section, item)).unwrap();
        i.importance = Importance::level(importance).unwrap_or_default();
        i.availability = availability;
    }

    #[test]
    fn formula_and_ordering() {
        let fw = canonical_framework();
        let mut a = blank();
        set(
            &mut a,
            "Language",
            "Computability",
            3,
            Availability::Enumerated(Level::NONE),
        );
        set(
            &mut a,
            "Tools",
            "Online Catalog",
            0,
            Availability::Enumerated(Level::NONE),
        );
        set(
            &mut a,
            "Research",
            "Cumulative Fund",
            3,
            Availability::Enumerated(Level::VAST),
        );
        set(
            &mut a,
            "DHuBase",
            "Digitized Books",
            2,
            Availability::Count(4),
        );
        set(
            &mut a,
            "Education",
            "Active Institution",
            2,
            Availability::AtLeastCount(10),
        );

        let gaps = gap_report(&a, &fw, &default_ruleset());
        assert_eq!(gaps.len(), 26);
        let scored: Vec<(&str, i32)> = gaps
            .iter()
            .filter(|e| e.is_assessed())
            .map(|e| (e.item.as_str(), e.gap_score))
            .collect();
        assert_eq!(
            scored,
            vec![
                ("Computability", 9),
                ("Digitized Books", 4),
                ("Active Institution", 2),
                ("Online Catalog", 0),
                ("Cumulative Fund", 0),
            ]
        );
        assert!(gaps[5..].iter().all(|e| e.gap_score == UNASSESSED));
        assert_eq!(gaps[5].item, "Digitized Photo Archives");
    }

    #[test]
    fn renders() {
        let fw = canonical_framework();
        let mut a = blank();
        set(
            &mut a,
            "Language",
            "Computability",
            3,
            Availability::Enumerated(Level::NONE),
        );
        let gaps = gap_report(&a, &fw, &default_ruleset());
        let md = render_gap_report(&gaps, Format::Markdown).unwrap();
        assert!(md.contains("| Language | Computability | 3 | 0 | 9 |"));
        assert!(md.contains("| DHuBase | Digitized Books | 0 |  | unassessed |"));
        let json: serde_json::Value =
            serde_json::from_str(&render_gap_report(&gaps, Format::Json).unwrap()).unwrap();
        assert_eq!(json[0]["gap_score"], 9);
        let plain = render_gap_report(&gaps, Format::Plain).unwrap();
        assert_eq!(plain.lines().count(), 27);
        let csv = render_gap_report(&gaps, Format::Csv).unwrap();
        assert!(
            csv.starts_with("Section,Item,Importance,Level,Gap\nLanguage,Computability,3,0,9\n")
        );
    }
}
