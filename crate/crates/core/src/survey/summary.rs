use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::response::{Condition, SurveyResponse};
use super::SurveyError;
use crate::model::{Category, FeatureCatalog};
use crate::table::{self, SchemaError};

/// Mean, sample standard deviation (n - 1 denominator) and count of one
/// (feature, condition) cell. A single observation has std 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

impl CellStats {
    pub fn from_scores(scores: &[f64]) -> Option<Self> {
        let n = scores.len();
        if n == 0 {
            return None;
        }
        let mean = scores.iter().sum::<f64>() / n as f64;
        let std = if n == 1 {
            0.0
        } else {
            let ss: f64 = scores.iter().map(|v| (v - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt()
        };
        Some(Self { mean, std, n })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SurveySummary {
    cells: BTreeMap<(String, Condition), CellStats>,
}

impl SurveySummary {
    pub fn get(&self, feature: &str, condition: Condition) -> Option<&CellStats> {
        self.cells.get(&(feature.to_string(), condition))
    }

    pub fn cells(&self) -> impl Iterator<Item = (&str, Condition, &CellStats)> {
        self.cells.iter().map(|((f, c), s)| (f.as_str(), *c, s))
    }

    /// Mean score per feature under `condition`.
    pub fn means(&self, condition: Condition) -> BTreeMap<String, f64> {
        self.cells
            .iter()
            .filter(|((_, c), _)| *c == condition)
            .map(|((f, _), s)| (f.clone(), s.mean))
            .collect()
    }
}

/// Per-cell mean and sample standard deviation over `valid` responses.
///
/// Scores are sorted before summation so the result does not depend on
/// respondent order.
pub fn summarize(valid: &[SurveyResponse]) -> Result<SurveySummary, SurveyError> {
    let mut scores: BTreeMap<(String, Condition), Vec<f64>> = BTreeMap::new();
    for r in valid {
        for (feature, &score) in &r.ratings {
            scores
                .entry((feature.clone(), r.condition))
                .or_default()
                .push(score);
        }
    }
    for condition in Condition::ALL {
        if !valid.iter().any(|r| r.condition == condition) {
            return Err(SurveyError::EmptyCondition(condition));
        }
    }
    let cells = scores
        .into_iter()
        .map(|(key, mut v)| {
            v.sort_by(f64::total_cmp);
            let stats = CellStats::from_scores(&v).expect("cells are non-empty");
            (key, stats)
        })
        .collect();
    Ok(SurveySummary { cells })
}

/// High/low score pairs for `feature` from respondents rated under both
/// conditions, ordered by respondent id.
pub fn paired_scores(valid: &[SurveyResponse], feature: &str) -> (Vec<f64>, Vec<f64>) {
    let mut high = BTreeMap::new();
    let mut low = BTreeMap::new();
    for r in valid {
        if let Some(&s) = r.ratings.get(feature) {
            let side = match r.condition {
                Condition::HighResolution => &mut high,
                Condition::LowResolution => &mut low,
            };
            side.insert(r.respondent_id.as_str(), s);
        }
    }
    high.iter()
        .filter_map(|(id, &h)| low.get(id).map(|&l| (h, l)))
        .unzip()
}

/// Respondents × features score matrix under one condition, restricted to
/// respondents who rated every feature in `features`.
pub fn score_matrix(
    valid: &[SurveyResponse],
    condition: Condition,
    features: &[&str],
) -> Vec<Vec<f64>> {
    let mut rows: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for r in valid.iter().filter(|r| r.condition == condition) {
        let row: Option<Vec<f64>> = features.iter().map(|f| r.ratings.get(*f).copied()).collect();
        if let Some(row) = row {
            rows.insert(r.respondent_id.as_str(), row);
        }
    }
    rows.into_values().collect()
}

/// One line of the importance table: both condition cells for a feature
/// plus a free-text significance note.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceRow {
    pub category: Category,
    pub feature_id: String,
    pub high: CellStats,
    pub low: CellStats,
    pub significance: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ImportanceTable {
    pub rows: Vec<ImportanceRow>,
}

pub const IMPORTANCE_CSV_HEADER: [&str; 9] = [
    "category",
    "feature_id",
    "high_mean",
    "high_std",
    "high_n",
    "low_mean",
    "low_std",
    "low_n",
    "significance",
];

impl ImportanceTable {
    /// Lays a summary out in catalog order. `significance` maps feature id
    /// to a note such as a high-vs-low p-value.
    pub fn from_summary(
        summary: &SurveySummary,
        catalog: &FeatureCatalog,
        significance: &BTreeMap<String, String>,
    ) -> Result<Self, SurveyError> {
        let rows = catalog
            .features()
            .iter()
            .map(|f| {
                let cell = |c| {
                    summary
                        .get(&f.id, c)
                        .copied()
                        .ok_or_else(|| SurveyError::MissingCell {
                            feature: f.id.clone(),
                            condition: c,
                        })
                };
                Ok(ImportanceRow {
                    category: f.category,
                    feature_id: f.id.clone(),
                    high: cell(Condition::HighResolution)?,
                    low: cell(Condition::LowResolution)?,
                    significance: significance.get(&f.id).cloned().unwrap_or_default(),
                })
            })
            .collect::<Result<_, SurveyError>>()?;
        Ok(Self { rows })
    }

    pub fn means(&self, condition: Condition) -> BTreeMap<String, f64> {
        self.rows
            .iter()
            .map(|r| {
                let cell = match condition {
                    Condition::HighResolution => r.high,
                    Condition::LowResolution => r.low,
                };
                (r.feature_id.clone(), cell.mean)
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        table::write(
            &IMPORTANCE_CSV_HEADER,
            self.rows.iter().map(|r| {
                [
                    r.category.to_string(),
                    r.feature_id.clone(),
                    r.high.mean.to_string(),
                    r.high.std.to_string(),
                    r.high.n.to_string(),
                    r.low.mean.to_string(),
                    r.low.std.to_string(),
                    r.low.n.to_string(),
                    r.significance.clone(),
                ]
            }),
        )
    }

    pub fn from_csv(text: &str) -> Result<Self, SchemaError> {
        let mut seen = BTreeSet::new();
        let rows = table::read(text, &IMPORTANCE_CSV_HEADER)?
            .iter()
            .map(|row| {
                let feature_id = row.get("feature_id").to_string();
                if !seen.insert(feature_id.clone()) {
                    return Err(row.error("feature_id", format!("duplicate feature `{feature_id}`")));
                }
                Ok(ImportanceRow {
                    category: row.parse("category")?,
                    feature_id,
                    high: CellStats {
                        mean: row.parse("high_mean")?,
                        std: row.parse("high_std")?,
                        n: row.parse("high_n")?,
                    },
                    low: CellStats {
                        mean: row.parse("low_mean")?,
                        std: row.parse("low_std")?,
                        n: row.parse("low_n")?,
                    },
                    significance: row.get("significance").to_string(),
                })
            })
            .collect::<Result<_, SchemaError>>()?;
        Ok(Self { rows })
    }
}
