use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::catalog::{Category, FeatureCatalog};
use super::ModelError;

const SUM_TOLERANCE: f64 = 1e-9;

/// Normalized importance weight per privacy feature id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWeights", into = "RawWeights")]
pub struct ImportanceWeights {
    entries: BTreeMap<String, f64>,
    provenance: String,
}

#[derive(Serialize, Deserialize)]
struct RawWeights {
    entries: BTreeMap<String, f64>,
    #[serde(default)]
    provenance: String,
}

impl TryFrom<RawWeights> for ImportanceWeights {
    type Error = ModelError;

    fn try_from(raw: RawWeights) -> Result<Self, Self::Error> {
        ImportanceWeights::new(raw.entries, raw.provenance)
    }
}

impl From<ImportanceWeights> for RawWeights {
    fn from(w: ImportanceWeights) -> Self {
        RawWeights {
            entries: w.entries,
            provenance: w.provenance,
        }
    }
}

impl ImportanceWeights {
    /// Accepts weights that are non-negative and already sum to one.
    pub fn new(
        entries: BTreeMap<String, f64>,
        provenance: impl Into<String>,
    ) -> Result<Self, ModelError> {
        if entries.is_empty() {
            return Err(ModelError::EmptySelection);
        }
        for (id, &w) in &entries {
            if !w.is_finite() || w < 0.0 {
                return Err(ModelError::InvalidWeights(format!("weight for `{id}` is {w}")));
            }
        }
        let sum: f64 = entries.values().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(ModelError::InvalidWeights(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(Self {
            entries,
            provenance: provenance.into(),
        })
    }

    pub fn entries(&self) -> &BTreeMap<String, f64> {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.entries.get(id).copied()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Picks, per category, the feature with the highest mean if that mean
/// reaches `threshold`. Equal means resolve to the lexicographically
/// smaller id.
pub fn select_features(
    catalog: &FeatureCatalog,
    means: &BTreeMap<String, f64>,
    threshold: f64,
) -> Result<BTreeSet<String>, ModelError> {
    if !(0.0..=100.0).contains(&threshold) {
        return Err(ModelError::InvalidThreshold(threshold));
    }
    for id in catalog.ids() {
        match means.get(id) {
            Some(m) if m.is_finite() => {}
            _ => return Err(ModelError::MissingFeature(id.to_string())),
        }
    }

    let mut selected = BTreeSet::new();
    for category in Category::ALL {
        let mut best: Option<(&str, f64)> = None;
        for f in catalog.features().iter().filter(|f| f.category == category) {
            let m = means[f.id.as_str()];
            best = match best {
                None => Some((&f.id, m)),
                Some((bid, bm)) if m > bm || (m == bm && f.id.as_str() < bid) => Some((&f.id, m)),
                keep => keep,
            };
        }
        if let Some((id, m)) = best {
            if m >= threshold {
                selected.insert(id.to_string());
            }
        }
    }
    Ok(selected)
}

/// Normalizes the means of `selected` features so they sum to one.
pub fn derive_weights(
    means: &BTreeMap<String, f64>,
    selected: &BTreeSet<String>,
    provenance: impl Into<String>,
) -> Result<ImportanceWeights, ModelError> {
    if selected.is_empty() {
        return Err(ModelError::EmptySelection);
    }
    let mut raw = BTreeMap::new();
    for id in selected {
        let m = *means
            .get(id)
            .ok_or_else(|| ModelError::MissingFeature(id.clone()))?;
        if !(m > 0.0) || !m.is_finite() {
            return Err(ModelError::NonPositiveScore { id: id.clone(), score: m });
        }
        raw.insert(id.clone(), m);
    }
    let total: f64 = raw.values().sum();
    let entries = raw.into_iter().map(|(id, m)| (id, m / total)).collect();
    ImportanceWeights::new(entries, provenance)
}
