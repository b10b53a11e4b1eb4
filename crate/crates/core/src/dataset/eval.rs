use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::labels::{FrameLabelSet, Label, Task};
use super::DatasetError;
use crate::model::{AccuracyCurve, CurveSample, ModelError, Provenance};

/// Recognizer outputs for one task at one resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionSet {
    task: Task,
    resolution: u32,
    entries: BTreeMap<String, Label>,
}

impl PredictionSet {
    pub fn new(
        task: Task,
        resolution: u32,
        entries: BTreeMap<String, Label>,
    ) -> Result<Self, DatasetError> {
        if resolution == 0 {
            return Err(DatasetError::InvalidResolution(resolution));
        }
        if let Some((clip, label)) = entries.iter().find(|(_, l)| l.task() != task) {
            return Err(DatasetError::WrongTaskLabel {
                clip: clip.clone(),
                task,
                label: label.to_string(),
            });
        }
        Ok(Self { task, resolution, entries })
    }

    pub fn task(&self) -> Task {
        self.task
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn entries(&self) -> &BTreeMap<String, Label> {
        &self.entries
    }
}

/// Fraction of predictions that exactly match the clip-level truth.
pub fn evaluate_accuracy(
    predictions: &PredictionSet,
    truth: &BTreeMap<String, FrameLabelSet>,
) -> Result<f64, DatasetError> {
    if predictions.entries.is_empty() {
        return Err(DatasetError::EmptyPredictions);
    }
    let mut correct = 0usize;
    for (clip, &label) in &predictions.entries {
        let t = truth
            .get(clip)
            .ok_or_else(|| DatasetError::UnknownClip(clip.clone()))?;
        if t.get(predictions.task) == label {
            correct += 1;
        }
    }
    Ok(correct as f64 / predictions.entries.len() as f64)
}

/// Per-resolution accuracy as a sorted, validated curve.
pub fn build_accuracy_curve(
    label: impl Into<String>,
    points: &[(u32, f64)],
    source: Provenance,
) -> Result<AccuracyCurve, ModelError> {
    let samples = points
        .iter()
        .map(|&(r, a)| CurveSample::new(r, a, source))
        .collect();
    AccuracyCurve::from_unsorted(label, samples)
}

/// Accuracy of every prediction set for `task`, keyed by resolution.
pub fn accuracy_by_resolution(
    sets: &[PredictionSet],
    task: Task,
    truth: &BTreeMap<String, FrameLabelSet>,
) -> Result<Vec<(u32, f64)>, DatasetError> {
    let mut out = BTreeMap::new();
    for set in sets.iter().filter(|s| s.task == task) {
        if out.insert(set.resolution, evaluate_accuracy(set, truth)?).is_some() {
            return Err(DatasetError::DuplicatePredictionSet {
                task,
                resolution: set.resolution,
            });
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyRow {
    pub task: Task,
    pub resolution: u32,
    pub accuracy: f64,
    pub n: usize,
}
