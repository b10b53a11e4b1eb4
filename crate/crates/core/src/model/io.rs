//! JSON and CSV (de)serialization of curve sets and weights.
//!
//! Curve CSV header: `label,resolution,accuracy,source`. Rows of one label
//! may appear in any order; curves keep the order of first appearance.

use serde::{Deserialize, Serialize};

use super::curve::{AccuracyCurve, CurveSample, Provenance};
use super::weights::ImportanceWeights;
use super::ModelError;
use crate::table::{self, SchemaError};
use crate::FORMAT_VERSION;

pub const CURVE_CSV_HEADER: [&str; 4] = ["label", "resolution", "accuracy", "source"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSetFile {
    pub format_version: u32,
    pub curves: Vec<AccuracyCurve>,
}

impl CurveSetFile {
    pub fn new(curves: Vec<AccuracyCurve>) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            curves,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightsFile {
    pub format_version: u32,
    pub weights: ImportanceWeights,
}

pub fn curves_to_json(curves: &[AccuracyCurve]) -> String {
    let file = CurveSetFile::new(curves.to_vec());
    serde_json::to_string_pretty(&file).expect("curves serialize") + "\n"
}

pub fn curves_from_json(text: &str) -> Result<Vec<AccuracyCurve>, ModelError> {
    let file: CurveSetFile = serde_json::from_str(text)?;
    check_version(file.format_version)?;
    Ok(file.curves)
}

pub fn curves_to_csv(curves: &[AccuracyCurve]) -> String {
    let rows = curves.iter().flat_map(|c| {
        c.samples().iter().map(move |s| {
            [
                c.label().to_string(),
                s.resolution.to_string(),
                s.accuracy.to_string(),
                s.source.to_string(),
            ]
        })
    });
    table::write(&CURVE_CSV_HEADER, rows)
}

pub fn curves_from_csv(text: &str) -> Result<Vec<AccuracyCurve>, ModelError> {
    let rows = table::read(text, &CURVE_CSV_HEADER)?;
    let mut grouped: Vec<(String, Vec<CurveSample>, u64)> = Vec::new();
    for row in &rows {
        let label = row.get("label");
        if label.is_empty() {
            return Err(row.error("label", "empty label").into());
        }
        let resolution: u32 = row.parse("resolution")?;
        let accuracy: f64 = row.parse("accuracy")?;
        if !(0.0..=1.0).contains(&accuracy) {
            return Err(row.error("accuracy", format!("{accuracy} outside [0, 1]")).into());
        }
        if resolution == 0 {
            return Err(row.error("resolution", "must be positive").into());
        }
        let source: Provenance = row.parse("source")?;
        let sample = CurveSample::new(resolution, accuracy, source);
        match grouped.iter_mut().find(|(l, _, _)| l == label) {
            Some((_, samples, _)) => {
                if samples.iter().any(|s| s.resolution == resolution) {
                    return Err(row
                        .error("resolution", format!("duplicate resolution {resolution} for `{label}`"))
                        .into());
                }
                samples.push(sample);
            }
            None => grouped.push((label.to_string(), vec![sample], row.line)),
        }
    }
    grouped
        .into_iter()
        .map(|(label, samples, _)| AccuracyCurve::from_unsorted(label, samples))
        .collect()
}

pub fn weights_to_json(weights: &ImportanceWeights) -> String {
    let file = WeightsFile {
        format_version: FORMAT_VERSION,
        weights: weights.clone(),
    };
    serde_json::to_string_pretty(&file).expect("weights serialize") + "\n"
}

pub fn weights_from_json(text: &str) -> Result<ImportanceWeights, ModelError> {
    let file: WeightsFile = serde_json::from_str(text)?;
    check_version(file.format_version)?;
    Ok(file.weights)
}

fn check_version(v: u32) -> Result<(), ModelError> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(SchemaError::new(0, "format_version", format!("unsupported version {v}")).into())
    }
}
