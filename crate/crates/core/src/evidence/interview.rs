use std::collections::HashSet;

use serde::Serialize;

use super::{EvidencePayload, EvidenceRecord};
use crate::error::{Error, Result};

/// One answer: a respondent's response class for an interview subject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterviewResponse {
    pub respondent: Option<String>,
    pub subject: String,
    pub response: String,
}

impl InterviewResponse {
    pub fn new(subject: impl Into<String>, response: impl Into<String>) -> Self {
        Self {
            respondent: None,
            subject: subject.into(),
            response: response.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterviewDistribution {
    pub subjects: Vec<SubjectDistribution>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubjectDistribution {
    pub subject: String,
    /// Distinct respondents when ids are known, otherwise the response count.
    pub respondent_total: usize,
    pub responses: Vec<ResponseShare>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResponseShare {
    pub response: String,
    pub count: usize,
    pub percentage: f64,
}

impl InterviewDistribution {
    pub fn percentage(&self, subject: &str, response: &str) -> Option<f64> {
        self.subjects
            .iter()
            .find(|s| s.subject == subject)?
            .responses
            .iter()
            .find(|r| r.response == response)
            .map(|r| r.percentage)
    }
}

/// Per-subject share of each response class, in first-seen order.
pub fn interview_distribution(responses: &[InterviewResponse]) -> Result<InterviewDistribution> {
    if responses.is_empty() {
        return Err(Error::EmptyInput(
            "interview distribution needs at least one response",
        ));
    }
    let mut subjects: Vec<(SubjectDistribution, HashSet<&str>)> = Vec::new();
    for r in responses {
        let idx = match subjects.iter().position(|(s, _)| s.subject == r.subject) {
            Some(i) => i,
            None => {
                subjects.push((
                    SubjectDistribution {
                        subject: r.subject.clone(),
                        respondent_total: 0,
                        responses: Vec::new(),
                    },
                    HashSet::new(),
                ));
                subjects.len() - 1
            }
        };
        let (dist, respondents) = &mut subjects[idx];
        match dist.responses.iter_mut().find(|s| s.response == r.response) {
            Some(share) => share.count += 1,
            None => dist.responses.push(ResponseShare {
                response: r.response.clone(),
                count: 1,
                percentage: 0.0,
            }),
        }
        if let Some(id) = &r.respondent {
            respondents.insert(id.as_str());
        }
    }

    let subjects = subjects
        .into_iter()
        .map(|(mut dist, respondents)| {
            let total: usize = dist.responses.iter().map(|s| s.count).sum();
            for share in &mut dist.responses {
                share.percentage = (100 * share.count) as f64 / total as f64;
            }
            dist.respondent_total = if respondents.is_empty() {
                total
            } else {
                respondents.len()
            };
            dist
        })
        .collect();
    Ok(InterviewDistribution { subjects })
}

/// Interview responses held in a ledger, with the record source as the
/// respondent id.
pub fn interview_responses(ledger: &[EvidenceRecord]) -> Vec<InterviewResponse> {
    ledger
        .iter()
        .filter_map(|rec| match &rec.payload {
            EvidencePayload::Interview { subject, response } => Some(InterviewResponse {
                respondent: Some(rec.source.clone()),
                subject: subject.clone(),
                response: response.clone(),
            }),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn unanimous_subject() {
        let responses: Vec<_> = (0..10)
            .map(|_| InterviewResponse::new("Familiarity with Digital Humanities", "Not at all"))
            .collect();
        let d = interview_distribution(&responses).unwrap();
        assert_eq!(
            d.percentage("Familiarity with Digital Humanities", "Not at all"),
            Some(100.0)
        );
        assert_eq!(d.subjects[0].respondent_total, 10);
    }

    #[test]
    fn seventy_thirty_split() {
        let mut responses = vec![InterviewResponse::new("role", "important"); 7];
        responses.extend(vec![InterviewResponse::new("role", "not important"); 3]);
        let d = interview_distribution(&responses).unwrap();
        assert_eq!(d.percentage("role", "important"), Some(70.0));
        assert_eq!(d.percentage("role", "not important"), Some(30.0));
    }

    #[test]
    fn singleton_and_empty() {
        let d = interview_distribution(&[InterviewResponse::new("s", "r")]).unwrap();
        assert_eq!(d.percentage("s", "r"), Some(100.0));
        assert!(interview_distribution(&[]).is_err());
    }

    #[test]
    fn respondent_ids_count_distinct_people() {
        let r = |who: &str, resp: &str| InterviewResponse {
            respondent: Some(who.into()),
            subject: "s".into(),
            response: resp.into(),
        };
        let d = interview_distribution(&[r("a", "x"), r("a", "y"), r("b", "x")]).unwrap();
        assert_eq!(d.subjects[0].respondent_total, 2);
    }

    proptest! {
        #[test]
        fn percentages_sum_to_hundred(
            answers in prop::collection::vec((0u8..4, 0u8..5), 1..200)
        ) {
            let responses: Vec<_> = answers
                .iter()
                .map(|(s, r)| InterviewResponse::new(format!("s{s}"), format!("r{r}")))
                .collect();
            let d = interview_distribution(&responses).unwrap();
            for subject in &d.subjects {
                let sum: f64 = subject.responses.iter().map(|r| r.percentage).sum();
                prop_assert!((sum - 100.0).abs() <= 1e-9, "{sum}");
            }
        }
    }
}
