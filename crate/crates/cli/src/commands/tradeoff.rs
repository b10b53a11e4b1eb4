use std::collections::BTreeMap;
use std::path::Path;

use privres_core::fixtures::{machine_fixture_curves, table1_weights};
use privres_core::model::{
    derive_weights, optimal_range, select_features, sweep, AccuracyCurve, FeatureCatalog, ImportanceWeights, Interpolation, ModelError,
    ObjectiveCurve, ObjectivePoint, OptimalRange, TradeoffModel,
};
use privres_core::model::io::{curves_from_csv, curves_from_json, weights_from_json};
use privres_core::survey::{Condition, ImportanceTable};
use privres_core::FORMAT_VERSION;
use serde::{Deserialize, Serialize};

use super::{is_json, load};
use crate::error::CliError;
use crate::output::{to_json, write_config, Emitted};
use crate::{svg, TradeoffArgs};

pub const OBJECTIVE_CSV_HEADER: [&str; 3] = ["lambda", "resolution", "S"];

/// Contents of `optimum.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimumFile {
    pub format_version: u32,
    pub task_label: String,
    pub privacy_features: Vec<String>,
    pub interpolation: Interpolation,
    pub epsilon: f64,
    pub grid: Vec<u32>,
    pub optima: Vec<OptimalRange>,
}

#[derive(Serialize, Deserialize)]
struct ObjectiveRow {
    lambda: f64,
    resolution: u32,
    #[serde(rename = "S")]
    s: f64,
}

pub fn objective_to_csv(curves: &[ObjectiveCurve]) -> Result<String, CliError> {
    let internal = |e: csv::Error| CliError::Internal(e.to_string());
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(OBJECTIVE_CSV_HEADER).map_err(internal)?;
    for c in curves {
        for p in &c.points {
            w.serialize(ObjectiveRow {
                lambda: c.lambda,
                resolution: p.resolution,
                s: p.value,
            })
            .map_err(internal)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

/// Groups rows by λ in order of first appearance.
pub fn objective_from_csv(text: &str) -> Result<Vec<ObjectiveCurve>, csv::Error> {
    let mut curves: Vec<ObjectiveCurve> = Vec::new();
    for row in csv::Reader::from_reader(text.as_bytes()).deserialize() {
        let row: ObjectiveRow = row?;
        let point = ObjectivePoint {
            resolution: row.resolution,
            value: row.s,
        };
        match curves.iter_mut().find(|c| c.lambda.to_bits() == row.lambda.to_bits()) {
            Some(c) => c.points.push(point),
            None => curves.push(ObjectiveCurve {
                lambda: row.lambda,
                points: vec![point],
            }),
        }
    }
    Ok(curves)
}

#[derive(Serialize)]
struct Params<'a> {
    curves: Option<&'a Path>,
    task_label: &'a str,
    weights: Option<&'a Path>,
    importance: Option<&'a Path>,
    threshold: Option<f64>,
    lambda: &'a [f64],
    grid: &'a [u32],
    epsilon: f64,
    interpolation: Interpolation,
}

fn load_weights(a: &TradeoffArgs) -> Result<ImportanceWeights, CliError> {
    if let Some(path) = &a.weights {
        return load(path, weights_from_json);
    }
    if let Some(path) = &a.importance {
        let table = load(path, ImportanceTable::from_csv)?;
        let catalog = FeatureCatalog::standard();
        let selected = select_features(&catalog, &table.means(Condition::LowResolution), a.threshold)
            .map_err(|e| CliError::in_file(path, e))?;
        return Ok(derive_weights(
            &table.means(Condition::HighResolution),
            &selected,
            format!("importance table {}", path.display()),
        )?);
    }
    Ok(table1_weights())
}

pub fn run(a: &TradeoffArgs, out: &Path) -> Result<Vec<String>, CliError> {
    // reject a bad λ before touching any input
    if a.lambda.is_empty() {
        return Err(ModelError::EmptyGrid.into());
    }
    if let Some(&bad) = a.lambda.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        return Err(ModelError::InvalidLambda(bad).into());
    }
    let curves: Vec<AccuracyCurve> = match &a.curves {
        Some(path) if is_json(path) => load(path, curves_from_json)?,
        Some(path) => load(path, curves_from_csv)?,
        None => machine_fixture_curves(),
    };
    let weights = load_weights(a)?;

    let mut task = None;
    let mut privacy = BTreeMap::new();
    let mut ignored = Vec::new();
    for c in curves {
        if c.label() == a.task_label {
            task = Some(c);
        } else if weights.get(c.label()).is_some() {
            privacy.insert(c.label().to_string(), c);
        } else {
            ignored.push(c.label().to_string());
        }
    }
    let task = task.ok_or_else(|| CliError::Usage(format!("no curve labelled `{}`", a.task_label)))?;
    let model = TradeoffModel::new(task, privacy, weights, a.lambda[0], a.interp)?;
    let grid = match &a.grid {
        Some(g) => g.clone(),
        None => model.default_grid(),
    };
    let objective = sweep(&model, &grid, &a.lambda)?;
    let optima = objective
        .iter()
        .map(|c| optimal_range(c, a.epsilon))
        .collect::<Result<Vec<_>, _>>()?;

    let mut emitted = Emitted::default();
    emitted.write(out.join("objective.csv"), objective_to_csv(&objective)?.as_bytes())?;
    let report = OptimumFile {
        format_version: FORMAT_VERSION,
        task_label: a.task_label.clone(),
        privacy_features: model.weights().ids().map(str::to_string).collect(),
        interpolation: a.interp,
        epsilon: a.epsilon,
        grid: grid.clone(),
        optima: optima.clone(),
    };
    emitted.write(out.join("optimum.json"), to_json(&report)?.as_bytes())?;
    emitted.write(out.join("objective.svg"), svg::render(&objective, &optima).as_bytes())?;
    let config = write_config(
        out,
        "tradeoff",
        &Params {
            curves: a.curves.as_deref(),
            task_label: &a.task_label,
            weights: a.weights.as_deref(),
            importance: a.importance.as_deref(),
            threshold: a.importance.as_ref().map(|_| a.threshold),
            lambda: &a.lambda,
            grid: &grid,
            epsilon: a.epsilon,
            interpolation: a.interp,
        },
    )?;
    emitted.files.push(config);

    let mut lines: Vec<String> = ignored
        .iter()
        .map(|l| format!("ignored curve `{l}` (no importance weight)"))
        .collect();
    for o in &optima {
        lines.push(format!(
            "λ = {}: max S = {:.4} at {r}×{r}, range [{}, {}] (ε = {})",
            o.lambda,
            o.max_value,
            o.range.0,
            o.range.1,
            o.epsilon,
            r = o.argmax_resolution
        ));
    }
    lines.extend(super::wrote(&emitted));
    Ok(lines)
}
