use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use privres_core::fixtures::{table1, SURVEY_TOTAL_RESPONSES, SURVEY_VALID_RESPONSES};
use privres_core::model::io::weights_to_json;
use privres_core::model::{derive_weights, select_features, FeatureCatalog, ModelError};
use privres_core::survey::{
    filter_attention, friedman, paired_scores, score_matrix,
    summarize, synthesize_responses, wilcoxon_signed_rank, Condition, ImportanceTable, SurveyResponse,
    TestMethod, TestResult, WilcoxonMode,
};
use privres_core::survey::io::{responses_from_csv, responses_from_json};
use privres_core::FORMAT_VERSION;
use serde::{Deserialize, Serialize};

use super::load;
use crate::error::CliError;
use crate::output::{read_text, to_json, write_config, Emitted};
use crate::SurveyArgs;

pub const WILCOXON_CSV_HEADER: [&str; 7] =
    ["feature_id", "n_pairs", "n_effective", "statistic", "z", "p_value", "method"];

/// Contents of `selection.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionFile {
    pub format_version: u32,
    pub condition: Condition,
    pub threshold: f64,
    pub selected: BTreeSet<String>,
}

/// Contents of `attention.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttentionReport {
    pub format_version: u32,
    pub source: String,
    pub tolerance: u32,
    /// Responses (one per respondent and condition) before filtering.
    pub total: usize,
    pub valid: usize,
    pub excluded: usize,
    pub excluded_respondents: Vec<String>,
    /// Friedman test across all features, per condition, when computable.
    #[serde(default)]
    pub friedman: BTreeMap<Condition, TestResult>,
}

/// One row of `wilcoxon.csv`; test columns are empty when every pair tied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonRow {
    pub feature_id: String,
    pub n_pairs: usize,
    pub n_effective: Option<usize>,
    pub statistic: Option<f64>,
    pub z: Option<f64>,
    pub p_value: Option<f64>,
    pub method: Option<TestMethod>,
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Internal(e.to_string())
}

pub fn wilcoxon_to_csv(rows: &[WilcoxonRow]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(WILCOXON_CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn wilcoxon_from_csv(text: &str) -> Result<Vec<WilcoxonRow>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().collect()
}

#[derive(Serialize)]
struct Params<'a> {
    source: &'a str,
    ratings: Option<&'a Path>,
    attention: Option<&'a Path>,
    responses: Option<&'a Path>,
    synthetic: Option<usize>,
    seed: Option<u64>,
    tolerance: u32,
    threshold: f64,
    wilcoxon: WilcoxonMode,
}

enum Input {
    Table(ImportanceTable),
    Responses(Vec<SurveyResponse>),
}

fn source_name(a: &SurveyArgs) -> &'static str {
    if a.ratings.is_some() {
        "ratings-csv"
    } else if a.responses.is_some() {
        "responses-json"
    } else if a.synthetic.is_some() {
        "synthetic"
    } else {
        "bundled-table"
    }
}

fn read_input(a: &SurveyArgs, catalog: &FeatureCatalog) -> Result<Input, CliError> {
    if let Some(path) = &a.ratings {
        let text = read_text(path)?;
        let ratings_only = responses_from_csv(&text, None, catalog).map_err(|e| CliError::in_file(path, e))?;
        let Some(att) = &a.attention else {
            return Ok(Input::Responses(ratings_only));
        };
        // the ratings parse cleanly, so any remaining error is in the attention file
        let attention = read_text(att)?;
        let responses = responses_from_csv(&text, Some(&attention), catalog).map_err(|e| CliError::in_file(att, e))?;
        return Ok(Input::Responses(responses));
    }
    if let Some(path) = &a.responses {
        return Ok(Input::Responses(load(path, |t| responses_from_json(t, catalog))?));
    }
    if let Some(n) = a.synthetic {
        if n < 2 {
            return Err(CliError::Usage("--synthetic needs at least 2 respondents".into()));
        }
        return Ok(Input::Responses(synthesize_responses(&table1(), n, a.seed)));
    }
    Ok(Input::Table(table1()))
}

fn wilcoxon_rows(valid: &[SurveyResponse], catalog: &FeatureCatalog, mode: WilcoxonMode) -> Result<Vec<WilcoxonRow>, CliError> {
    catalog
        .ids()
        .map(|id| {
            let (high, low) = paired_scores(valid, id);
            let mut row = WilcoxonRow {
                feature_id: id.to_string(),
                n_pairs: high.len(),
                n_effective: None,
                statistic: None,
                z: None,
                p_value: None,
                method: None,
            };
            match wilcoxon_signed_rank(&high, &low, mode) {
                Ok(t) => {
                    row.n_effective = Some(t.n_effective);
                    row.statistic = Some(t.statistic);
                    row.z = t.z;
                    row.p_value = Some(t.p_value);
                    row.method = Some(t.method);
                }
                Err(privres_core::survey::SurveyError::InsufficientData(_)) => {}
                Err(e) => return Err(e.into()),
            }
            Ok(row)
        })
        .collect()
}

fn significance_note(row: &WilcoxonRow) -> String {
    match row.p_value {
        Some(p) if p < 0.001 => "p < 0.001".to_string(),
        Some(p) => format!("p = {p:.3}"),
        None => "n/a".to_string(),
    }
}

pub fn run(a: &SurveyArgs, out: &Path) -> Result<Vec<String>, CliError> {
    if !(0.0..=100.0).contains(&a.threshold) {
        return Err(ModelError::InvalidThreshold(a.threshold).into());
    }
    let catalog = FeatureCatalog::standard();
    let source = source_name(a);
    let mode: WilcoxonMode = a.wilcoxon.into();
    let mut emitted = Emitted::default();
    let mut lines = Vec::new();

    let (table, attention) = match read_input(a, &catalog)? {
        Input::Table(table) => {
            let report = AttentionReport {
                format_version: FORMAT_VERSION,
                source: source.into(),
                tolerance: a.tolerance,
                total: SURVEY_TOTAL_RESPONSES,
                valid: SURVEY_VALID_RESPONSES,
                excluded: SURVEY_TOTAL_RESPONSES - SURVEY_VALID_RESPONSES,
                excluded_respondents: Vec::new(),
                friedman: BTreeMap::new(),
            };
            (table, report)
        }
        Input::Responses(responses) => {
            let total = responses.len();
            let (valid, failed) = filter_attention(responses, a.tolerance);
            let excluded_respondents: BTreeSet<String> =
                failed.iter().map(|r| r.respondent_id.clone()).collect();
            let summary = summarize(&valid)?;
            let rows = wilcoxon_rows(&valid, &catalog, mode)?;
            emitted.write(out.join("wilcoxon.csv"), wilcoxon_to_csv(&rows)?.as_bytes())?;
            let notes = rows
                .iter()
                .map(|r| (r.feature_id.clone(), significance_note(r)))
                .collect();
            let table = ImportanceTable::from_summary(&summary, &catalog, &notes)?;
            let features: Vec<&str> = catalog.ids().collect();
            let friedman = Condition::ALL
                .into_iter()
                .filter_map(|c| friedman(&score_matrix(&valid, c, &features)).ok().map(|t| (c, t)))
                .collect();
            lines.push(format!(
                "{} of {total} response(s) passed attention checks; {} excluded",
                valid.len(),
                failed.len()
            ));
            let report = AttentionReport {
                format_version: FORMAT_VERSION,
                source: source.into(),
                tolerance: a.tolerance,
                total,
                valid: valid.len(),
                excluded: failed.len(),
                excluded_respondents: excluded_respondents.into_iter().collect(),
                friedman,
            };
            (table, report)
        }
    };
    emitted.write(out.join("summary.csv"), table.to_csv().as_bytes())?;
    emitted.write(out.join("attention.json"), to_json(&attention)?.as_bytes())?;

    let selected = select_features(&catalog, &table.means(Condition::LowResolution), a.threshold)?;
    let selection = SelectionFile {
        format_version: FORMAT_VERSION,
        condition: Condition::LowResolution,
        threshold: a.threshold,
        selected: selected.clone(),
    };
    emitted.write(out.join("selection.json"), to_json(&selection)?.as_bytes())?;
    let params = Params {
        source,
        ratings: a.ratings.as_deref(),
        attention: a.attention.as_deref(),
        responses: a.responses.as_deref(),
        synthetic: a.synthetic,
        seed: a.synthetic.map(|_| a.seed),
        tolerance: a.tolerance,
        threshold: a.threshold,
        wilcoxon: mode,
    };
    let weights = derive_weights(&table.means(Condition::HighResolution), &selected, format!("survey ({source})"));
    let weights = match weights {
        Ok(w) => w,
        Err(e) => {
            // the other outputs are still useful for diagnosing the inputs
            write_config(out, "survey", &params)?;
            return Err(e.into());
        }
    };
    emitted.write(out.join("weights.json"), weights_to_json(&weights).as_bytes())?;
    emitted.files.push(write_config(out, "survey", &params)?);

    let sel: Vec<&str> = selected.iter().map(String::as_str).collect();
    lines.push(format!("selected: {}", sel.join(", ")));
    for (id, w) in weights.entries() {
        lines.push(format!("weight {id} = {w:.4}"));
    }
    lines.extend(super::wrote(&emitted));
    Ok(lines)
}
