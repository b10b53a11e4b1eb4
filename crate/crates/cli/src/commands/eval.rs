use std::collections::BTreeMap;
use std::path::Path;

use privres_core::dataset::io::{accuracy_to_csv, clip_labels_from_csv, clips_from_json, predictions_from_csv};
use privres_core::dataset::{
    accuracy_by_resolution, build_accuracy_curve, AccuracyRow, DatasetError, FrameLabelSet, Task,
};
use privres_core::model::io::curves_to_csv;
use privres_core::model::Provenance;
use serde::Serialize;

use super::{is_json, load};
use crate::error::CliError;
use crate::output::{write_config, Emitted};
use crate::EvalArgs;

#[derive(Serialize)]
struct Params<'a> {
    predictions: &'a Path,
    truth: &'a Path,
}

/// Curve label used for a task's accuracy curve.
pub fn curve_label(task: Task) -> &'static str {
    task.feature_id().unwrap_or("activity")
}

pub fn run(a: &EvalArgs, out: &Path) -> Result<Vec<String>, CliError> {
    let sets = load(&a.predictions, predictions_from_csv)?;
    if sets.is_empty() {
        return Err(CliError::in_file(&a.predictions, DatasetError::EmptyPredictions));
    }
    let truth: BTreeMap<String, FrameLabelSet> = if is_json(&a.truth) {
        load(&a.truth, clips_from_json)?
            .clips
            .into_iter()
            .map(|c| (c.clip_id, c.clip_labels))
            .collect()
    } else {
        load(&a.truth, clip_labels_from_csv)?
    };

    let mut rows = Vec::new();
    let mut curves = Vec::new();
    for task in Task::ALL.iter().copied() {
        let points = accuracy_by_resolution(&sets, task, &truth).map_err(|e| CliError::in_file(&a.predictions, e))?;
        if points.is_empty() {
            continue;
        }
        for &(resolution, accuracy) in &points {
            let n = sets
                .iter()
                .find(|s| s.task() == task && s.resolution() == resolution)
                .map_or(0, |s| s.entries().len());
            rows.push(AccuracyRow { task, resolution, accuracy, n });
        }
        curves.push(build_accuracy_curve(curve_label(task), &points, Provenance::Computed)?);
    }

    let mut emitted = Emitted::default();
    emitted.write(out.join("accuracy.csv"), accuracy_to_csv(&rows).as_bytes())?;
    emitted.write(out.join("curves.csv"), curves_to_csv(&curves).as_bytes())?;
    let params = Params {
        predictions: &a.predictions,
        truth: &a.truth,
    };
    emitted.files.push(write_config(out, "eval", &params)?);

    let mut lines: Vec<String> = rows
        .iter()
        .map(|r| format!("{} r={}: accuracy {:.4} (n = {})", r.task, r.resolution, r.accuracy, r.n))
        .collect();
    lines.extend(super::wrote(&emitted));
    Ok(lines)
}
