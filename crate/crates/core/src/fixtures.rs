//! Published summary numbers bundled as data.
//!
//! Every curve sample carries a [`Provenance`] tag: `paper-table` for table
//! cells, `paper-text` for accuracies quoted in prose and `derived-fixture`
//! for cells filled in here (below-detection zeros, interpolated gaps and
//! carried-forward tails).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::model::{
    derive_weights, interpolate, select_features, AccuracyCurve, CurveSample, FeatureCatalog,
    ImportanceWeights, Interpolation, ModelError, Provenance, TradeoffModel,
};
use crate::survey::{CellStats, Condition, ImportanceRow, ImportanceTable};
use crate::table::{self, SchemaError};

/// The seven side lengths at which recognizers were evaluated.
pub const SAMPLED_RESOLUTIONS: [u32; 7] = [15, 20, 30, 50, 100, 160, 240];

/// Respondents retained after attention checks in the importance survey.
pub const SURVEY_VALID_RESPONSES: usize = 115;
pub const SURVEY_TOTAL_RESPONSES: usize = 120;
pub const SELECTION_THRESHOLD: f64 = 50.0;

// feature id, high avg, high std, low avg, low std, significance
const TABLE1: [(&str, f64, f64, f64, f64, &str); 25] = [
    ("identifiable_face", 60.2, 24.3, 57.5, 26.0, "p = 0.13"),
    ("gender", 43.5, 29.2, 43.4, 29.4, "p = 0.81"),
    ("skin_color", 42.0, 28.6, 43.1, 27.3, "p = 0.94"),
    ("age_group", 42.9, 25.1, 41.2, 25.8, "p = 0.35"),
    ("weight_group", 43.9, 27.2, 40.9, 27.2, "p = 0.16"),
    ("hair_color", 36.2, 27.4, 40.9, 28.1, "p = 0.05"),
    ("eye_color", 40.4, 28.9, 40.3, 28.4, "p = 0.90"),
    ("height_group", 37.3, 25.8, 40.0, 27.7, "p = 0.30"),
    ("nudity", 61.6, 30.9, 62.9, 29.4, "p = 0.71"),
    ("home_address", 62.8, 23.1, 55.6, 26.1, "p = 0.01"),
    ("number_code", 57.5, 25.5, 55.6, 26.6, "p = 0.79"),
    ("medical_treatment", 60.4, 23.2, 51.7, 25.9, "p < 0.001"),
    ("physical_disability", 52.1, 25.1, 49.4, 26.0, "p = 0.25"),
    ("hand_writing", 52.6, 26.4, 44.9, 27.7, "p < 0.01"),
    ("birthday", 54.2, 26.8, 44.7, 28.5, "p < 0.01"),
    ("clothing", 40.5, 27.9, 41.5, 27.5, "p = 0.94"),
    ("tattoo", 42.2, 28.7, 39.2, 28.6, "p = 0.34"),
    ("religion", 41.8, 27.7, 44.6, 26.6, "p = 0.29"),
    ("race", 40.1, 26.5, 42.2, 27.7, "p = 0.64"),
    ("nationality", 42.1, 28.3, 41.3, 27.5, "p = 0.46"),
    ("relationship", 60.3, 24.8, 52.9, 25.7, "p < 0.001"),
    ("employment", 58.2, 22.8, 52.1, 25.8, "p = 0.05"),
    ("pet", 37.3, 24.4, 39.1, 27.8, "p = 0.46"),
    ("valuable_property", 64.0, 25.0, 59.6, 26.1, "p = 0.34"),
    ("living_schedule", 59.3, 24.4, 59.1, 26.3, "p = 0.10"),
];

/// Per-feature importance ratings under both display conditions.
pub fn table1() -> ImportanceTable {
    let catalog = FeatureCatalog::standard();
    let rows = TABLE1
        .iter()
        .map(|&(id, hm, hs, lm, ls, sig)| ImportanceRow {
            category: catalog.get(id).expect("catalog feature").category,
            feature_id: id.to_string(),
            high: CellStats {
                mean: hm,
                std: hs,
                n: SURVEY_VALID_RESPONSES,
            },
            low: CellStats {
                mean: lm,
                std: ls,
                n: SURVEY_VALID_RESPONSES,
            },
            significance: sig.to_string(),
        })
        .collect();
    ImportanceTable { rows }
}

/// Features picked from the low-resolution means at the 50.0 threshold.
pub fn table1_selection() -> BTreeSet<String> {
    let low = table1().means(Condition::LowResolution);
    select_features(&FeatureCatalog::standard(), &low, SELECTION_THRESHOLD)
        .expect("bundled table covers the catalog")
}

/// High-resolution means of the selected features, normalized to sum to one.
pub fn table1_weights() -> ImportanceWeights {
    let high = table1().means(Condition::HighResolution);
    derive_weights(
        &high,
        &table1_selection(),
        "bundled importance table: high-resolution means, normalized to sum 1",
    )
    .expect("selected features have positive means")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdlRecognizer {
    Human,
    Vit,
    ResNet50,
    EfficientNet,
}

impl AdlRecognizer {
    pub const ALL: [AdlRecognizer; 4] = [
        AdlRecognizer::Human,
        AdlRecognizer::Vit,
        AdlRecognizer::ResNet50,
        AdlRecognizer::EfficientNet,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AdlRecognizer::Human => "adl_human",
            AdlRecognizer::Vit => "adl_vit",
            AdlRecognizer::ResNet50 => "adl_resnet50",
            AdlRecognizer::EfficientNet => "adl_efficientnet",
        }
    }
}

// resolution, human, ViT, ResNet50, EfficientNet
const TABLE2: [(u32, f64, f64, f64, f64); 7] = [
    (15, 0.375, 0.810, 0.639, 0.529),
    (20, 0.525, 0.844, 0.663, 0.635),
    (30, 0.758, 0.898, 0.751, 0.680),
    (50, 0.884, 0.907, 0.805, 0.746),
    (100, 0.896, 0.922, 0.815, 0.751),
    (160, 0.899, 0.932, 0.820, 0.800),
    (240, 0.906, 0.946, 0.888, 0.839),
];

/// Raw `(resolution, accuracy)` pairs of one activity-recognition column.
pub fn table2_column(recognizer: AdlRecognizer) -> Vec<(u32, f64)> {
    TABLE2
        .iter()
        .map(|&(r, h, v, res, eff)| {
            let a = match recognizer {
                AdlRecognizer::Human => h,
                AdlRecognizer::Vit => v,
                AdlRecognizer::ResNet50 => res,
                AdlRecognizer::EfficientNet => eff,
            };
            (r, a)
        })
        .collect()
}

pub fn table2_curve(recognizer: AdlRecognizer) -> AccuracyCurve {
    let samples = table2_column(recognizer)
        .into_iter()
        .map(|(r, a)| CurveSample::new(r, a, Provenance::PaperTable))
        .collect();
    AccuracyCurve::new(recognizer.label(), samples).expect("table is sorted and bounded")
}

pub fn table2_curves() -> Vec<AccuracyCurve> {
    AdlRecognizer::ALL.into_iter().map(table2_curve).collect()
}

/// Machine privacy accuracies quoted in prose, with the resolution below
/// which the recognizer was reported to detect nothing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotedMachineCurve {
    pub feature_id: &'static str,
    pub recognizer: &'static str,
    /// Resolutions strictly below this are reported as detecting nothing.
    pub detects_nothing_below: u32,
    pub quoted: Vec<(u32, f64)>,
}

pub fn quoted_machine_privacy() -> Vec<QuotedMachineCurve> {
    vec![
        QuotedMachineCurve {
            feature_id: "identifiable_face",
            recognizer: "arcface",
            detects_nothing_below: 50,
            quoted: vec![(100, 0.710), (240, 1.000)],
        },
        QuotedMachineCurve {
            feature_id: "nudity",
            recognizer: "nudenet",
            detects_nothing_below: 30,
            quoted: vec![(100, 0.880)],
        },
        QuotedMachineCurve {
            feature_id: "valuable_property",
            recognizer: "detr",
            detects_nothing_below: 50,
            quoted: vec![(100, 0.720), (160, 0.770), (240, 0.820)],
        },
        QuotedMachineCurve {
            feature_id: "relationship",
            recognizer: "grm",
            detects_nothing_below: 30,
            quoted: vec![(100, 0.341), (160, 0.609), (240, 0.805)],
        },
    ]
}

/// Completes a quoted curve on `grid`.
///
/// Cells below the detection floor become 0, gaps between known cells are
/// interpolated with `mode`, and cells past the last known value carry it
/// forward. Filled cells are tagged `derived-fixture`.
pub fn complete_quoted_curve(
    quoted: &QuotedMachineCurve,
    grid: &[u32],
    mode: Interpolation,
) -> Result<AccuracyCurve, ModelError> {
    let mut known: Vec<CurveSample> = grid
        .iter()
        .filter(|&&r| r < quoted.detects_nothing_below)
        .map(|&r| CurveSample::new(r, 0.0, Provenance::DerivedFixture))
        .collect();
    known.extend(
        quoted
            .quoted
            .iter()
            .map(|&(r, a)| CurveSample::new(r, a, Provenance::PaperText)),
    );
    let known = AccuracyCurve::from_unsorted(quoted.feature_id, known)?;
    let (lo, hi) = known.domain();
    let samples = grid
        .iter()
        .map(|&r| {
            if let Some(s) = known.samples().iter().find(|s| s.resolution == r) {
                return Ok(*s);
            }
            let a = if r > hi {
                known.samples()[known.samples().len() - 1].accuracy
            } else if r < lo {
                0.0
            } else {
                interpolate(&known, f64::from(r), mode)?
            };
            Ok(CurveSample::new(r, a, Provenance::DerivedFixture))
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    AccuracyCurve::from_unsorted(quoted.feature_id, samples)
}

/// Machine privacy curves on the seven sampled resolutions, keyed by feature id.
pub fn machine_privacy_curves() -> BTreeMap<String, AccuracyCurve> {
    quoted_machine_privacy()
        .iter()
        .map(|q| {
            let c = complete_quoted_curve(q, &SAMPLED_RESOLUTIONS, Interpolation::LinearLogResolution)
                .expect("quoted fixtures are valid");
            (q.feature_id.to_string(), c)
        })
        .collect()
}

/// Privacy curves and matching weights for the bundled machine model.
pub fn machine_privacy_model_parts() -> (BTreeMap<String, AccuracyCurve>, ImportanceWeights) {
    (machine_privacy_curves(), table1_weights())
}

/// The bundled machine model: ViT activity accuracy against the machine
/// privacy curves, weighted by the survey-derived importance weights.
pub fn machine_tradeoff_model(lambda: f64) -> Result<TradeoffModel, ModelError> {
    let (curves, weights) = machine_privacy_model_parts();
    TradeoffModel::new(
        table2_curve(AdlRecognizer::Vit),
        curves,
        weights,
        lambda,
        Interpolation::default(),
    )
}

/// ViT activity curve followed by the four machine privacy curves.
pub fn machine_fixture_curves() -> Vec<AccuracyCurve> {
    let mut curves = vec![table2_curve(AdlRecognizer::Vit)];
    curves.extend(machine_privacy_curves().into_values());
    curves
}

/// Human accuracies quoted in prose at single resolutions.
pub fn human_quoted_points() -> Vec<AccuracyCurve> {
    [
        ("human_identifiable_face", 100, 0.792),
        ("human_relationship", 50, 0.911),
        ("human_nudity", 50, 0.894),
    ]
    .into_iter()
    .map(|(label, r, a)| {
        AccuracyCurve::new(label, vec![CurveSample::new(r, a, Provenance::PaperText)])
            .expect("single sample")
    })
    .collect()
}

/// Mean/std accuracy before and after ×4 super-resolution at one resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperResolutionRow {
    pub table: String,
    pub resolution: u32,
    pub before_mean: f64,
    pub before_std: f64,
    pub after_mean: f64,
    pub after_std: f64,
    pub significance: String,
}

pub const SUPER_RESOLUTION_HEADER: [&str; 7] = [
    "table",
    "resolution",
    "before_mean",
    "before_std",
    "after_mean",
    "after_std",
    "significance",
];

const TABLE3: [(u32, f64, f64, f64, f64, &str); 7] = [
    (15, 0.386, 0.487, 0.452, 0.498, "p<0.001"),
    (20, 0.593, 0.491, 0.706, 0.456, "p=0.002"),
    (30, 0.803, 0.397, 0.845, 0.362, "p=0.149"),
    (50, 0.891, 0.310, 0.893, 0.308, "p=0.932"),
    (100, 0.846, 0.360, 0.898, 0.302, "p=0.046"),
    (160, 0.899, 0.301, 0.908, 0.289, "p=0.701"),
    (240, 0.908, 0.289, 0.927, 0.260, "p=0.386"),
];

const TABLE4: [(u32, f64, f64, f64, f64, &str); 7] = [
    (15, 0.558, 0.497, 0.602, 0.476, "p<0.001"),
    (20, 0.673, 0.469, 0.736, 0.440, "p<0.001"),
    (30, 0.793, 0.404, 0.823, 0.381, "p=0.038"),
    (50, 0.851, 0.356, 0.866, 0.340, "p=0.276"),
    (100, 0.895, 0.305, 0.906, 0.291, "p=0.359"),
    (160, 0.905, 0.292, 0.913, 0.280, "p=0.488"),
    (240, 0.921, 0.268, 0.925, 0.263, "p=0.766"),
];

fn super_resolution_rows(
    name: &str,
    rows: &[(u32, f64, f64, f64, f64, &str)],
) -> Vec<SuperResolutionRow> {
    rows.iter()
        .map(|&(resolution, bm, bs, am, asd, sig)| SuperResolutionRow {
            table: name.to_string(),
            resolution,
            before_mean: bm,
            before_std: bs,
            after_mean: am,
            after_std: asd,
            significance: sig.to_string(),
        })
        .collect()
}

/// Human activity-recognition accuracy with and without super-resolution.
pub fn super_resolution_activity() -> Vec<SuperResolutionRow> {
    super_resolution_rows("activity", &TABLE3)
}

/// Human privacy-recognition accuracy with and without super-resolution.
pub fn super_resolution_privacy() -> Vec<SuperResolutionRow> {
    super_resolution_rows("privacy", &TABLE4)
}

pub fn super_resolution_to_csv(rows: &[SuperResolutionRow]) -> String {
    table::write(
        &SUPER_RESOLUTION_HEADER,
        rows.iter().map(|r| {
            [
                r.table.clone(),
                r.resolution.to_string(),
                r.before_mean.to_string(),
                r.before_std.to_string(),
                r.after_mean.to_string(),
                r.after_std.to_string(),
                r.significance.clone(),
            ]
        }),
    )
}

pub fn super_resolution_from_csv(text: &str) -> Result<Vec<SuperResolutionRow>, SchemaError> {
    table::read(text, &SUPER_RESOLUTION_HEADER)?
        .iter()
        .map(|row| {
            Ok(SuperResolutionRow {
                table: row.get("table").to_string(),
                resolution: row.parse("resolution")?,
                before_mean: row.parse("before_mean")?,
                before_std: row.parse("before_std")?,
                after_mean: row.parse("after_mean")?,
                after_std: row.parse("after_std")?,
                significance: row.get("significance").to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_covers_catalog() {
        let t = table1();
        let cat = FeatureCatalog::standard();
        assert_eq!(t.rows.len(), 25);
        for id in cat.ids() {
            assert!(t.rows.iter().any(|r| r.feature_id == id), "{id}");
        }
    }

    #[test]
    fn bundled_selection_and_weights() {
        let sel: Vec<_> = table1_selection().into_iter().collect();
        assert_eq!(
            sel,
            ["identifiable_face", "nudity", "relationship", "valuable_property"]
        );
        let w = table1_weights();
        assert!((w.get("valuable_property").unwrap() - 64.0 / 246.1).abs() < 1e-15);
    }

    #[test]
    fn machine_curves_follow_fill_rule() {
        let curves = machine_privacy_curves();
        let face = &curves["identifiable_face"];
        for s in &face.samples()[..3] {
            assert_eq!((s.accuracy, s.source), (0.0, Provenance::DerivedFixture));
        }
        let at = |c: &AccuracyCurve, r: u32| *c.samples().iter().find(|s| s.resolution == r).unwrap();
        assert_eq!(at(face, 100).source, Provenance::PaperText);
        assert_eq!(at(face, 240).accuracy, 1.0);

        // log2-space gap fill between (30, 0) and (100, 0.71)
        let t = (50f64 / 30.0).log2() / (100f64 / 30.0).log2();
        assert!((at(face, 50).accuracy - 0.71 * t).abs() < 1e-12);

        let nudity = &curves["nudity"];
        assert_eq!(at(nudity, 20).accuracy, 0.0);
        assert!(at(nudity, 30).accuracy > 0.0);
        assert_eq!(at(nudity, 240).accuracy, 0.88);
        assert_eq!(at(nudity, 240).source, Provenance::DerivedFixture);

        for c in curves.values() {
            assert_eq!(c.resolutions().collect::<Vec<_>>(), SAMPLED_RESOLUTIONS);
            assert!(c.samples().windows(2).all(|w| w[0].accuracy <= w[1].accuracy));
        }
    }

    #[test]
    fn super_resolution_tables_round_trip() {
        let mut rows = super_resolution_activity();
        rows.extend(super_resolution_privacy());
        let text = super_resolution_to_csv(&rows);
        let back = super_resolution_from_csv(&text).unwrap();
        assert_eq!(back, rows);
        assert_eq!(super_resolution_to_csv(&back), text);
    }
}
