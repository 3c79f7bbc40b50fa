use std::fmt::Write;

use serde::Serialize;

use super::{csv_table, json_text, markdown_table, plain_table, Format};
use crate::assessment::{Assessment, ItemPath, SubjectInfo};
use crate::error::{Error, Result};
use crate::schema::Framework;
use crate::scoring::{
    classify, describe_score, normalize_availability, NormalizedLevel, Rational, ReadinessCategory,
    Ruleset,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItemComparison {
    pub section: String,
    pub item: String,
    pub level_a: NormalizedLevel,
    pub level_b: NormalizedLevel,
    /// `level_b − level_a` when both are known.
    pub delta: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionComparison {
    pub name: String,
    pub score_a: Option<Rational>,
    pub score_b: Option<Rational>,
    pub delta: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub subjects: (SubjectInfo, SubjectInfo),
    pub items: Vec<ItemComparison>,
    pub sections: Vec<SectionComparison>,
    pub categories: (ReadinessCategory, ReadinessCategory),
}

pub fn compare(
    a: &Assessment,
    b: &Assessment,
    fw: &Framework,
    r: &Ruleset,
) -> Result<ComparisonReport> {
    if a.framework_id() != b.framework_id() {
        return Err(Error::FrameworkMismatch(
            a.framework_id().into(),
            b.framework_id().into(),
        ));
    }
    if a.framework_id() != fw.id {
        return Err(Error::FrameworkMismatch(
            a.framework_id().into(),
            fw.id.clone(),
        ));
    }

    let (class_a, class_b) = std::thread::scope(|s| {
        let ha = s.spawn(|| classify(a, fw, r));
        let cb = classify(b, fw, r);
        (ha.join().expect("classifier thread panicked"), cb)
    });
    let (class_a, class_b) = (class_a?, class_b?);

    let level = |x: &Assessment, path: &ItemPath| {
        x.item(path)
            .map(|i| normalize_availability(i.availability, r))
            .unwrap_or(NormalizedLevel::Unknown)
    };
    let items = fw
        .items()
        .filter_map(|(section, item)| {
            let path = ItemPath::new(&section.name, &item.name);
            if a.item(&path).is_none() && b.item(&path).is_none() {
                return None;
            }
            let (level_a, level_b) = (level(a, &path), level(b, &path));
            let delta = match (level_a.known(), level_b.known()) {
                (Some(x), Some(y)) => Some(y.get() as i8 - x.get() as i8),
                _ => None,
            };
            Some(ItemComparison {
                section: section.name.clone(),
                item: item.name.clone(),
                level_a,
                level_b,
                delta,
            })
        })
        .collect();

    let sections = class_a
        .section_scores
        .iter()
        .zip(&class_b.section_scores)
        .map(|(x, y)| SectionComparison {
            name: x.name.clone(),
            score_a: x.score,
            score_b: y.score,
            delta: match (x.score, y.score) {
                (Some(p), Some(q)) => Some(Rational(q.0 - p.0)),
                _ => None,
            },
        })
        .collect();

    Ok(ComparisonReport {
        subjects: (a.subject.clone(), b.subject.clone()),
        items,
        sections,
        categories: (class_a.category, class_b.category),
    })
}

pub fn render_comparison(report: &ComparisonReport, format: Format) -> Result<String> {
    let (sa, sb) = &report.subjects;
    let label_a = format!("{} ({})", sa.community, sa.language);
    let label_b = format!("{} ({})", sb.community, sb.language);
    let show_delta = |d: Option<String>| d.unwrap_or_default();

    let header = [
        "Section",
        "Item",
        label_a.as_str(),
        label_b.as_str(),
        "Delta",
    ];
    let mut rows: Vec<Vec<String>> = Vec::new();
    for s in &report.sections {
        rows.push(vec![
            s.name.clone(),
            String::new(),
            describe_score(s.score_a),
            describe_score(s.score_b),
            show_delta(s.delta.map(|d| d.to_string())),
        ]);
        for i in report.items.iter().filter(|i| i.section == s.name) {
            rows.push(vec![
                String::new(),
                i.item.clone(),
                i.level_a.to_string(),
                i.level_b.to_string(),
                show_delta(i.delta.map(|d| format!("{d:+}"))),
            ]);
        }
    }
    rows.push(vec![
        "Category".into(),
        String::new(),
        report.categories.0.to_string(),
        report.categories.1.to_string(),
        String::new(),
    ]);

    Ok(match format {
        Format::Json => json_text(report),
        Format::Csv => csv_table(&header, &rows),
        Format::Markdown => markdown_table(&header, &rows),
        Format::Plain => {
            let mut out = plain_table(&header, &rows);
            let _ = writeln!(
                out,
                "\n{label_a}: {}\n{label_b}: {}",
                report.categories.0, report.categories.1
            );
            out
        }
    })
}
