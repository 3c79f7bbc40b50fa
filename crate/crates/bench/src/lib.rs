//! Synthetic inputs for the benchmarks.

use dhuraf_core::schema::MeasurementHint;
use dhuraf_core::{
    canonical_framework, Assessment, Availability, Framework, FrameworkRef, Importance, ItemDef,
    Level, SectionDef, SubjectInfo,
};

fn subject() -> SubjectInfo {
    SubjectInfo {
        community: "Synthetic".into(),
        language: "Synthetic".into(),
        region: None,
        assessor: None,
        date: "2024-01-01".parse().expect("valid date"),
    }
}

/// A framework with `sections` sections of `items_per_section` items each;
/// every other section is core.
pub fn scaled_framework(sections: usize, items_per_section: usize) -> Framework {
    Framework {
        id: format!("synthetic-{sections}x{items_per_section}"),
        sections: (0..sections)
            .map(|s| SectionDef {
                name: format!("Section {s}"),
                core: s % 2 == 0,
                items: (0..items_per_section)
                    .map(|i| ItemDef {
                        name: format!("Item {s}.{i}"),
                        description: String::new(),
                        measurement_hint: MeasurementHint::Either,
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Fills every item of `fw` with a deterministic mix of availability
/// encodings. Different seeds give different mixes.
pub fn synthetic_assessment(fw: &Framework, seed: u64) -> Assessment {
    let framework = if fw.id == canonical_framework().id {
        FrameworkRef::Id(fw.id.clone())
    } else {
        FrameworkRef::Inline(fw.clone())
    };
    let mut a = Assessment::blank(framework, fw, subject());
    let mut state = seed
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    for item in a.sections.iter_mut().flat_map(|s| s.items.iter_mut()) {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let roll = state >> 33;
        item.importance = Importance::level((roll % 4) as u8).unwrap_or_default();
        item.availability = match roll % 7 {
            0 => Availability::Unknown,
            1 => Availability::NotApplicable,
            2 => Availability::Count(roll % 120),
            3 => Availability::AtLeastCount(1 + roll % 60),
            _ => Availability::Enumerated(Level::new((roll % 4) as u8).expect("level in range")),
        };
    }
    a
}

#[cfg(test)]
mod tests {
    use dhuraf_core::{validate_assessment, validate_framework};

    use super::*;

    #[test]
    fn synthetic_inputs_are_valid() {
        let fw = scaled_framework(8, 50);
        assert!(validate_framework(&fw).is_empty());
        let a = synthetic_assessment(&fw, 7);
        assert!(validate_assessment(&a, &fw).is_empty());
        assert_eq!(a.sections.iter().map(|s| s.items.len()).sum::<usize>(), 400);
        assert_eq!(synthetic_assessment(&fw, 7), a);
        assert_ne!(synthetic_assessment(&fw, 8), a);
    }
}
