#![allow(dead_code)]

use std::path::PathBuf;

use chrono::NaiveDate;
use dhuraf_core::evidence::EvidencePayload;
use dhuraf_core::{
    canonical_framework, parse_assessment, Assessment, Availability, EvidenceRecord, Framework,
    FrameworkRef, Importance, ItemAssessment, ItemPath, Level, Relevance, SectionAssessment,
    SubjectInfo,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture_bytes(name: &str) -> Vec<u8> {
    std::fs::read(fixture_path(name)).unwrap_or_else(|e| panic!("reading fixture {name}: {e}"))
}

pub fn fixture(name: &str) -> Assessment {
    parse_assessment(&fixture_bytes(name)).unwrap_or_else(|e| panic!("parsing fixture {name}: {e}"))
}

pub fn subject() -> SubjectInfo {
    SubjectInfo {
        community: "Test community".into(),
        language: "Test language".into(),
        region: None,
        assessor: None,
        date: NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(),
    }
}

/// Every canonical item set to `availability`, importance `+++`.
pub fn uniform(availability: Availability) -> Assessment {
    let fw = canonical_framework();
    let mut a = Assessment::blank(FrameworkRef::Id(fw.id.clone()), &fw, subject());
    for s in &mut a.sections {
        for i in &mut s.items {
            i.importance = Importance::Level(3);
            i.availability = availability;
        }
    }
    a
}

pub fn paths(fw: &Framework) -> Vec<ItemPath> {
    fw.items()
        .map(|(s, i)| ItemPath::new(&s.name, &i.name))
        .collect()
}

pub fn level() -> impl Strategy<Value = Level> {
    (0u8..=3).prop_map(|l| Level::new(l).unwrap())
}

pub fn importance() -> impl Strategy<Value = Importance> {
    prop_oneof![
        Just(Importance::Undecided),
        (1u8..=3).prop_map(Importance::Level)
    ]
}

/// Availability values whose normalized level is known.
pub fn known_availability() -> impl Strategy<Value = Availability> {
    prop_oneof![
        3 => level().prop_map(Availability::Enumerated),
        2 => prop_oneof![0u64..=120, any::<u64>()].prop_map(Availability::Count),
        1 => prop_oneof![1u64..=120, 1..=u64::MAX].prop_map(Availability::AtLeastCount),
    ]
}

pub fn availability() -> impl Strategy<Value = Availability> {
    prop_oneof![
        6 => known_availability(),
        1 => Just(Availability::Unknown),
        1 => Just(Availability::NotApplicable),
    ]
}

/// A complete canonical assessment: every item present, no evidence.
pub fn full_assessment() -> impl Strategy<Value = Assessment> {
    let n = canonical_framework().item_count();
    prop::collection::vec((importance(), availability()), n).prop_map(|values| {
        let fw = canonical_framework();
        let mut a = Assessment::blank(FrameworkRef::Id(fw.id.clone()), &fw, subject());
        let items = a.sections.iter_mut().flat_map(|s| s.items.iter_mut());
        for (item, (imp, av)) in items.zip(values) {
            item.importance = imp;
            item.availability = av;
        }
        a
    })
}

/// A canonical assessment with a random subset of sections and items, in
/// framework order, and no evidence.
pub fn partial_assessment() -> impl Strategy<Value = Assessment> {
    let fw = canonical_framework();
    let sections: Vec<_> = fw
        .sections
        .iter()
        .map(|def| {
            let names: Vec<String> = def.items.iter().map(|i| i.name.clone()).collect();
            let len = names.len();
            let name = def.name.clone();
            (
                any::<bool>(),
                subsequence(names, 0..=len),
                prop::collection::vec((importance(), availability()), len),
            )
                .prop_map(move |(keep, items, values)| {
                    keep.then(|| SectionAssessment {
                        name: name.clone(),
                        items: items
                            .into_iter()
                            .zip(values)
                            .map(|(n, (imp, av))| ItemAssessment::new(n, imp, av))
                            .collect(),
                    })
                })
        })
        .collect();
    sections.prop_map(|sections| Assessment {
        framework: FrameworkRef::Id(canonical_framework().id),
        subject: subject(),
        sections: sections.into_iter().flatten().collect(),
        evidence: Vec::new(),
    })
}

fn text() -> impl Strategy<Value = String> {
    prop_oneof![
        "[A-Za-z][A-Za-z0-9 .,'-]{0,24}",
        "\\PC{1,16}",
        Just("quote \" and \\ backslash".to_string()),
    ]
}

fn date() -> impl Strategy<Value = NaiveDate> {
    (1990i32..2100, 1u32..=12, 1u32..=28)
        .prop_map(|(y, m, d)| NaiveDate::from_ymd_opt(y, m, d).unwrap())
}

fn payload() -> impl Strategy<Value = EvidencePayload> {
    let relevance = prop_oneof![
        Just(Relevance::High),
        Just(Relevance::Partly),
        Just(Relevance::NotRelevant),
        Just(Relevance::Na),
    ];
    prop_oneof![
        (text(), any::<u64>(), relevance).prop_map(|(query, result_count, relevance)| {
            EvidencePayload::Search {
                query,
                result_count,
                relevance,
            }
        }),
        (text(), text())
            .prop_map(|(subject, response)| EvidencePayload::Interview { subject, response }),
        (text(), proptest::option::of(any::<u64>())).prop_map(|(summary, approx_size)| {
            EvidencePayload::Catalog {
                summary,
                approx_size,
            }
        }),
        (text(), proptest::option::of(any::<u64>())).prop_map(|(summary, approx_size)| {
            EvidencePayload::Priori {
                summary,
                approx_size,
            }
        }),
    ]
}

/// A structurally valid document in canonical order: random subject,
/// item values, notes and an evidence ledger referenced from items.
pub fn valid_document() -> impl Strategy<Value = Assessment> {
    let fw = canonical_framework();
    let all_paths = paths(&fw);
    let subject = (
        text(),
        text(),
        proptest::option::of(text()),
        proptest::option::of(text()),
        date(),
    )
        .prop_map(
            |(community, language, region, assessor, date)| SubjectInfo {
                community: format!("c{community}"),
                language: format!("l{language}"),
                region,
                assessor,
                date,
            },
        );
    let records = prop::collection::vec(
        (
            text(),
            date(),
            proptest::option::of(prop::sample::select(all_paths)),
            payload(),
        ),
        0..6,
    );
    let notes = prop::collection::vec(
        prop_oneof![3 => Just(String::new()), 1 => text()],
        fw.item_count(),
    );
    (partial_assessment(), subject, records, notes).prop_map(|(mut a, subject, records, notes)| {
        a.subject = subject;
        a.evidence = records
            .into_iter()
            .enumerate()
            .map(|(i, (source, date, item_ref, payload))| EvidenceRecord {
                id: format!("ev-{}", i + 1),
                source,
                date,
                item_ref,
                payload,
            })
            .collect();
        let mut notes = notes.into_iter();
        for s in &mut a.sections {
            for item in &mut s.items {
                item.notes = notes.next().unwrap_or_default();
            }
        }
        let refs: Vec<(ItemPath, String)> = a
            .evidence
            .iter()
            .filter_map(|r| r.item_ref.clone().map(|p| (p, r.id.clone())))
            .collect();
        for (path, id) in refs {
            if let Some(item) = a.item_mut(&path) {
                item.evidence_refs.push(id);
            }
        }
        a
    })
}

/// An availability whose normalized level under the default ruleset is
/// exactly `level`, in any of the encodings that produce it.
pub fn availability_at(level: u8) -> BoxedStrategy<Availability> {
    let enumerated = Just(Availability::Enumerated(Level::new(level).unwrap()));
    match level {
        0 => prop_oneof![enumerated, Just(Availability::Count(0))].boxed(),
        1 => prop_oneof![
            enumerated,
            (1u64..=5).prop_map(Availability::Count),
            (1u64..=5).prop_map(Availability::AtLeastCount)
        ]
        .boxed(),
        2 => prop_oneof![
            enumerated,
            (6u64..=50).prop_map(Availability::Count),
            (6u64..=50).prop_map(Availability::AtLeastCount)
        ]
        .boxed(),
        _ => prop_oneof![
            enumerated,
            (51u64..).prop_map(Availability::Count),
            (51u64..).prop_map(Availability::AtLeastCount)
        ]
        .boxed(),
    }
}

/// A full assessment plus one item raised from a known level to a strictly
/// higher one.
#[derive(Debug, Clone)]
pub struct RaiseCase {
    pub before: Assessment,
    pub after: Assessment,
    pub path: ItemPath,
}

pub fn raise_case() -> impl Strategy<Value = RaiseCase> {
    let n = canonical_framework().item_count();
    (
        full_assessment(),
        0..n,
        (0u8..3).prop_flat_map(|lo| (Just(lo), lo + 1..=3)),
    )
        .prop_flat_map(|(a, idx, (lo, hi))| {
            (Just(a), Just(idx), availability_at(lo), availability_at(hi))
        })
        .prop_map(|(mut before, idx, lo, hi)| {
            let path = paths(&canonical_framework())[idx].clone();
            before.item_mut(&path).unwrap().availability = lo;
            let mut after = before.clone();
            after.item_mut(&path).unwrap().availability = hi;
            RaiseCase {
                before,
                after,
                path,
            }
        })
}

pub fn check_raise(case: &RaiseCase) -> Result<(), TestCaseError> {
    let fw = canonical_framework();
    let r = dhuraf_core::default_ruleset();
    // the raised item is known on both sides, so neither side lacks data
    let before = dhuraf_core::classify(&case.before, &fw, &r)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let after = dhuraf_core::classify(&case.after, &fw, &r)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(
        after.category >= before.category,
        "raising {} lowered {} to {}",
        case.path,
        before.category,
        after.category
    );
    let (sb, sa) = (
        before.section(&case.path.section).unwrap(),
        after.section(&case.path.section).unwrap(),
    );
    prop_assert!(
        sa.score > sb.score,
        "section score did not rise: {:?} -> {:?}",
        sb.score,
        sa.score
    );
    Ok(())
}

/// A partial assessment and the same assessment padded with Unknown items.
#[derive(Debug, Clone)]
pub struct PaddedCase {
    pub base: Assessment,
    pub padded: Assessment,
}

pub fn padded_case() -> impl Strategy<Value = PaddedCase> {
    let n = canonical_framework().item_count();
    (
        partial_assessment(),
        prop::collection::vec(any::<bool>(), n),
        prop::collection::vec(importance(), n),
    )
        .prop_map(|(base, mask, imps)| {
            let fw = canonical_framework();
            let mut padded = base.clone();
            for ((path, add), imp) in paths(&fw).into_iter().zip(mask).zip(imps) {
                if !add || padded.item(&path).is_some() {
                    continue;
                }
                let item = ItemAssessment::new(&path.item, imp, Availability::Unknown);
                match padded.sections.iter_mut().find(|s| s.name == path.section) {
                    Some(s) => s.items.push(item),
                    None => padded.sections.push(SectionAssessment {
                        name: path.section.clone(),
                        items: vec![item],
                    }),
                }
            }
            PaddedCase { base, padded }
        })
}

pub fn check_padded(case: &PaddedCase) -> Result<(), TestCaseError> {
    let fw = canonical_framework();
    let r = dhuraf_core::default_ruleset();
    let run = |a: &Assessment| dhuraf_core::classify(a, &fw, &r).map_err(|e| e.to_string());
    prop_assert_eq!(run(&case.base), run(&case.padded));
    for (s_base, s_pad) in case.base.sections.iter().zip(&case.padded.sections) {
        prop_assert_eq!(
            dhuraf_core::section_score(s_base, &r),
            dhuraf_core::section_score(s_pad, &r)
        );
    }
    Ok(())
}

pub fn check_round_trip(a: &Assessment) -> Result<(), TestCaseError> {
    let bytes = dhuraf_core::serialize_assessment(a);
    let parsed = parse_assessment(&bytes)
        .map_err(|e| TestCaseError::fail(format!("{e}\n{}", String::from_utf8_lossy(&bytes))))?;
    prop_assert_eq!(&parsed, a);
    prop_assert_eq!(dhuraf_core::serialize_assessment(&parsed), bytes);
    Ok(())
}
