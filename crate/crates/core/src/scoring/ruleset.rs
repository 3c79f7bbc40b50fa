use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};
use crate::evidence::VisibilityThresholds;

/// Numeric parameters of the readiness classifier.
///
/// Counts map to levels through `count_thresholds = (t1, t2)`: 0 is level 0,
/// `1..=t1` level 1, `t1+1..=t2` level 2, above `t2` level 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ruleset {
    pub count_thresholds: (u64, u64),
    pub nearly_all_fraction: Rational,
    pub premature_level: Rational,
    pub mature_level: Rational,
    pub flourished_level: Rational,
    pub void_max_core_sections_with_evidence: usize,
    pub void_max_mean_core_score: Rational,
}

impl Default for Ruleset {
    fn default() -> Self {
        default_ruleset()
    }
}

/// Defaults calibrated so the two reference case studies land on Void and
/// Infancy respectively.
pub fn default_ruleset() -> Ruleset {
    Ruleset {
        count_thresholds: (5, 50),
        nearly_all_fraction: Rational::new(4, 5),
        premature_level: Rational::integer(1),
        mature_level: Rational::new(3, 2),
        flourished_level: Rational::new(5, 2),
        void_max_core_sections_with_evidence: 1,
        void_max_mean_core_score: Rational::new(1, 4),
    }
}

impl Ruleset {
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidRuleset(msg));
        let (t1, t2) = self.count_thresholds;
        if t1 == 0 || t1 >= t2 {
            return bad(format!(
                "count_thresholds must be strictly increasing positive integers, got ({t1}, {t2})"
            ));
        }
        let zero = Rational::ZERO;
        let one = Rational::integer(1);
        let three = Rational::integer(3);
        if self.nearly_all_fraction <= zero || self.nearly_all_fraction > one {
            return bad(format!(
                "nearly_all_fraction must lie in (0, 1], got {}",
                self.nearly_all_fraction
            ));
        }
        for (name, level) in [
            ("premature_level", self.premature_level),
            ("mature_level", self.mature_level),
            ("flourished_level", self.flourished_level),
            ("void_max_mean_core_score", self.void_max_mean_core_score),
        ] {
            if level < zero || level > three {
                return bad(format!("{name} must lie in [0, 3], got {level}"));
            }
        }
        if !(self.premature_level <= self.mature_level
            && self.mature_level <= self.flourished_level)
        {
            return bad(format!(
                "need premature_level <= mature_level <= flourished_level, got {} / {} / {}",
                self.premature_level, self.mature_level, self.flourished_level
            ));
        }
        Ok(())
    }
}

/// Classifier and visibility parameters together, as loaded from a
/// calibration file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Calibration {
    pub ruleset: Ruleset,
    pub visibility: VisibilityThresholds,
}

/// Partial calibration file: any subset of the [`Ruleset`] keys plus an
/// optional `visibility_thresholds` array. Missing keys keep their defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CalibrationFile {
    count_thresholds: Option<(u64, u64)>,
    nearly_all_fraction: Option<Rational>,
    premature_level: Option<Rational>,
    mature_level: Option<Rational>,
    flourished_level: Option<Rational>,
    void_max_core_sections_with_evidence: Option<usize>,
    void_max_mean_core_score: Option<Rational>,
    visibility_thresholds: Option<VisibilityThresholds>,
}

impl Calibration {
    /// Merges a partial JSON calibration file over the defaults.
    pub fn from_json(bytes: &[u8]) -> Result<Calibration> {
        let file: CalibrationFile =
            serde_json::from_slice(bytes).map_err(|e| Error::InvalidRuleset(e.to_string()))?;
        let mut rules = default_ruleset();
        if let Some(v) = file.count_thresholds {
            rules.count_thresholds = v;
        }
        if let Some(v) = file.nearly_all_fraction {
            rules.nearly_all_fraction = v;
        }
        if let Some(v) = file.premature_level {
            rules.premature_level = v;
        }
        if let Some(v) = file.mature_level {
            rules.mature_level = v;
        }
        if let Some(v) = file.flourished_level {
            rules.flourished_level = v;
        }
        if let Some(v) = file.void_max_core_sections_with_evidence {
            rules.void_max_core_sections_with_evidence = v;
        }
        if let Some(v) = file.void_max_mean_core_score {
            rules.void_max_mean_core_score = v;
        }
        rules.check()?;
        Ok(Calibration {
            ruleset: rules,
            visibility: file.visibility_thresholds.unwrap_or_default(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let r = default_ruleset();
        assert_eq!(r.count_thresholds, (5, 50));
        assert_eq!(r.nearly_all_fraction, Rational::new(4, 5));
        assert_eq!(r.flourished_level, Rational::new(5, 2));
        assert_eq!(r.mature_level, Rational::new(3, 2));
        assert_eq!(r.premature_level, Rational::integer(1));
        assert_eq!(r.void_max_core_sections_with_evidence, 1);
        assert_eq!(r.void_max_mean_core_score, Rational::new(1, 4));
        assert!(r.check().is_ok());
    }

    #[test]
    fn partial_file_merges_over_defaults() {
        let c =
            Calibration::from_json(br#"{"count_thresholds":[3,30],"mature_level":"7/4"}"#).unwrap();
        assert_eq!(c.ruleset.count_thresholds, (3, 30));
        assert_eq!(c.ruleset.mature_level, Rational::new(7, 4));
        assert_eq!(c.ruleset.flourished_level, Rational::new(5, 2));
        assert_eq!(c.visibility, VisibilityThresholds::default());

        let c = Calibration::from_json(br#"{"visibility_thresholds":[10,100,1000]}"#).unwrap();
        assert_eq!(c.visibility.upper, 1000);
        assert_eq!(c.ruleset, default_ruleset());

        assert_eq!(
            Calibration::from_json(b"{}").unwrap(),
            Calibration::default()
        );
    }

    #[test]
    fn invalid_files() {
        for json in [
            r#"{"count_thresholds":[50,5]}"#,
            r#"{"count_thresholds":[0,5]}"#,
            r#"{"nearly_all_fraction":0}"#,
            r#"{"nearly_all_fraction":1.5}"#,
            r#"{"premature_level":2,"mature_level":1}"#,
            r#"{"flourished_level":4}"#,
            r#"{"unknown_key":1}"#,
            "not json",
        ] {
            assert!(Calibration::from_json(json.as_bytes()).is_err(), "{json}");
        }
    }

    #[test]
    fn ruleset_serializes_with_field_names() {
        let v = serde_json::to_value(default_ruleset()).unwrap();
        assert_eq!(v["count_thresholds"], serde_json::json!([5, 50]));
        assert_eq!(v["nearly_all_fraction"], serde_json::json!(0.8));
        let back: Ruleset = serde_json::from_value(v).unwrap();
        assert_eq!(back, default_ruleset());
    }
}
