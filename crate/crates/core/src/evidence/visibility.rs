use serde::{Deserialize, Serialize};

use crate::assessment::Level;
use crate::error::{Error, Result};
use crate::scoring::NormalizedLevel;

/// Hit-count boundaries for internet visibility: a mean below `lower` is
/// level 0, below `middle` level 1, below `upper` level 2, otherwise 3.
///
/// Serialized as a three-element array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[u64; 3]", into = "[u64; 3]")]
pub struct VisibilityThresholds {
    pub lower: u64,
    pub middle: u64,
    pub upper: u64,
}

impl VisibilityThresholds {
    pub fn new(lower: u64, middle: u64, upper: u64) -> Result<Self> {
        if lower == 0 || lower >= middle || middle >= upper {
            return Err(Error::InvalidRuleset(format!(
                "visibility thresholds must be strictly increasing positive integers, got {lower}/{middle}/{upper}"
            )));
        }
        Ok(Self {
            lower,
            middle,
            upper,
        })
    }
}

impl Default for VisibilityThresholds {
    /// Places a mean of a few hundred thousand hits at "considerable" and a
    /// couple of million at "vast".
    fn default() -> Self {
        Self {
            lower: 1_000,
            middle: 100_000,
            upper: 2_000_000,
        }
    }
}

impl TryFrom<[u64; 3]> for VisibilityThresholds {
    type Error = String;

    fn try_from([a, b, c]: [u64; 3]) -> std::result::Result<Self, Self::Error> {
        VisibilityThresholds::new(a, b, c).map_err(|e| e.to_string())
    }
}

impl From<VisibilityThresholds> for [u64; 3] {
    fn from(t: VisibilityThresholds) -> Self {
        [t.lower, t.middle, t.upper]
    }
}

/// Level of the arithmetic mean of `hit_counts` (e.g. one count per dialect).
pub fn visibility_level(hit_counts: &[u64], t: &VisibilityThresholds) -> Result<NormalizedLevel> {
    if hit_counts.is_empty() {
        return Err(Error::EmptyInput("visibility needs at least one hit count"));
    }
    // mean < bound  <=>  sum < bound * n, kept in integers
    let n = hit_counts.len() as u128;
    let sum: u128 = hit_counts.iter().map(|&h| h as u128).sum();
    let below = |bound: u64| sum < bound as u128 * n;
    let level = if below(t.lower) {
        Level::NONE
    } else if below(t.middle) {
        Level::AVAILABLE
    } else if below(t.upper) {
        Level::CONSIDERABLE
    } else {
        Level::VAST
    };
    Ok(NormalizedLevel::Known(level))
}
