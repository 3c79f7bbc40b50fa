use serde::Serialize;

use super::{csv_table, json_text, markdown_table, Format};
use crate::assessment::{Assessment, Availability, Importance, ItemAssessment, SubjectInfo};
use crate::error::{Error, Result};
use crate::names::names_match;
use crate::schema::Framework;

const HEADER: [&str; 3] = ["Sections", "Importance", "Availability"];

/// One table line: a section header (`item` is `None`) or an item row.
struct Row<'a> {
    label: &'a str,
    item: Option<Option<&'a ItemAssessment>>,
}

/// Sections the assessment covers, in framework order. Each contributes a
/// header row and one row per framework item; items the assessment omits
/// render with blank cells.
fn rows<'a>(a: &'a Assessment, fw: &'a Framework) -> Vec<Row<'a>> {
    let mut out = Vec::new();
    for def in &fw.sections {
        let Some(section) = a.sections.iter().find(|s| names_match(&s.name, &def.name)) else {
            continue;
        };
        out.push(Row {
            label: &def.name,
            item: None,
        });
        for item_def in &def.items {
            out.push(Row {
                label: &item_def.name,
                item: Some(
                    section
                        .items
                        .iter()
                        .find(|i| names_match(&i.name, &item_def.name)),
                ),
            });
        }
    }
    out
}

fn cells(row: &Row<'_>) -> Vec<String> {
    match row.item {
        None => vec![row.label.to_string(), String::new(), String::new()],
        Some(item) => vec![
            row.label.to_string(),
            item.map(|i| i.importance.plus_signs()).unwrap_or_default(),
            item.map(|i| i.availability.table_cell())
                .unwrap_or_default(),
        ],
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    framework: &'a str,
    subject: &'a SubjectInfo,
    sections: Vec<JsonSection<'a>>,
}

#[derive(Serialize)]
struct JsonSection<'a> {
    name: &'a str,
    items: Vec<JsonItem<'a>>,
}

#[derive(Serialize)]
struct JsonItem<'a> {
    name: &'a str,
    importance: Importance,
    availability: Availability,
    rendered: Rendered,
}

#[derive(Serialize)]
struct Rendered {
    importance: String,
    availability: String,
}

/// Renders the three-column indicator table (Sections | Importance |
/// Availability). Importance prints as plus signs; availability as a digit,
/// `n+`, `NA`, or an empty cell when unknown.
pub fn render_indicator_table(a: &Assessment, fw: &Framework, format: Format) -> Result<String> {
    let rows = rows(a, fw);
    match format {
        Format::Markdown => Ok(markdown_table(
            &HEADER,
            &rows.iter().map(cells).collect::<Vec<_>>(),
        )),
        Format::Csv => Ok(csv_table(
            &HEADER,
            &rows.iter().map(cells).collect::<Vec<_>>(),
        )),
        Format::Json => {
            let mut sections: Vec<JsonSection<'_>> = Vec::new();
            for row in &rows {
                match row.item {
                    None => sections.push(JsonSection {
                        name: row.label,
                        items: Vec::new(),
                    }),
                    Some(item) => {
                        let importance = item.map(|i| i.importance).unwrap_or_default();
                        let availability = item.map(|i| i.availability).unwrap_or_default();
                        sections
                            .last_mut()
                            .expect("item rows follow a section row")
                            .items
                            .push(JsonItem {
                                name: row.label,
                                importance,
                                availability,
                                rendered: Rendered {
                                    importance: importance.plus_signs(),
                                    availability: availability.table_cell(),
                                },
                            });
                    }
                }
            }
            Ok(json_text(&JsonTable {
                framework: &fw.id,
                subject: &a.subject,
                sections,
            }))
        }
        Format::Plain => Err(Error::InvalidFormat(format.to_string())),
    }
}
