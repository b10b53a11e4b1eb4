use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SurveyError;
use crate::model::FeatureCatalog;

/// Display condition under which a response was collected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "high")]
    HighResolution,
    #[serde(rename = "low")]
    LowResolution,
}

impl Condition {
    pub const ALL: [Condition; 2] = [Condition::HighResolution, Condition::LowResolution];

    pub fn as_str(self) -> &'static str {
        match self {
            Condition::HighResolution => "high",
            Condition::LowResolution => "low",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "high" => Ok(Condition::HighResolution),
            "low" => Ok(Condition::LowResolution),
            _ => Err(format!("unknown condition `{s}` (expected high or low)")),
        }
    }
}

/// An attention-check slider: the score the respondent was told to pick
/// and the score they actually gave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttentionItem {
    pub expected: f64,
    pub given: f64,
}

impl AttentionItem {
    pub fn passes(&self, tolerance: u32) -> bool {
        (self.given - self.expected).abs() <= f64::from(tolerance)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyResponse {
    pub respondent_id: String,
    pub condition: Condition,
    pub ratings: BTreeMap<String, f64>,
    #[serde(default)]
    pub attention_items: Vec<AttentionItem>,
}

impl SurveyResponse {
    /// Checks score bounds and that every catalog feature is rated exactly
    /// once with no unknown ids.
    pub fn validate(&self, catalog: &FeatureCatalog) -> Result<(), SurveyError> {
        let in_range = |v: f64| (0.0..=100.0).contains(&v);
        for (id, &score) in &self.ratings {
            if catalog.get(id).is_none() {
                return Err(SurveyError::UnknownFeature {
                    respondent: self.respondent_id.clone(),
                    feature: id.clone(),
                });
            }
            if !in_range(score) {
                return Err(SurveyError::ScoreOutOfRange {
                    respondent: self.respondent_id.clone(),
                    score,
                });
            }
        }
        for id in catalog.ids() {
            if !self.ratings.contains_key(id) {
                return Err(SurveyError::MissingRating {
                    respondent: self.respondent_id.clone(),
                    condition: self.condition,
                    feature: id.to_string(),
                });
            }
        }
        for item in &self.attention_items {
            for v in [item.expected, item.given] {
                if !in_range(v) {
                    return Err(SurveyError::ScoreOutOfRange {
                        respondent: self.respondent_id.clone(),
                        score: v,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn passes_attention(&self, tolerance: u32) -> bool {
        self.attention_items.iter().all(|i| i.passes(tolerance))
    }
}

/// Splits responses into those passing every attention item within
/// `tolerance` and those failing at least one. Both halves keep input order.
pub fn filter_attention(
    responses: Vec<SurveyResponse>,
    tolerance: u32,
) -> (Vec<SurveyResponse>, Vec<SurveyResponse>) {
    responses
        .into_iter()
        .partition(|r| r.passes_attention(tolerance))
}
