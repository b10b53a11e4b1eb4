//! Survey response ingestion.
//!
//! Long-format ratings CSV: `respondent_id,condition,feature_id,score`.
//! Attention CSV: `respondent_id,condition,expected,given`.
//! JSON: `{"format_version": 1, "responses": [SurveyResponse, ...]}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::response::{AttentionItem, Condition, SurveyResponse};
use super::SurveyError;
use crate::model::FeatureCatalog;
use crate::table::{self, SchemaError};
use crate::FORMAT_VERSION;

pub const RATINGS_CSV_HEADER: [&str; 4] = ["respondent_id", "condition", "feature_id", "score"];
pub const ATTENTION_CSV_HEADER: [&str; 4] = ["respondent_id", "condition", "expected", "given"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponsesFile {
    pub format_version: u32,
    pub responses: Vec<SurveyResponse>,
}

fn score_field(row: &table::Row<'_>, field: &str) -> Result<f64, SchemaError> {
    let v: f64 = row.parse(field)?;
    if !(0.0..=100.0).contains(&v) {
        return Err(row.error(field, format!("{v} outside [0, 100]")));
    }
    Ok(v)
}

/// Parses long-format ratings plus an optional attention CSV and validates
/// each response against `catalog`.
pub fn responses_from_csv(
    ratings: &str,
    attention: Option<&str>,
    catalog: &FeatureCatalog,
) -> Result<Vec<SurveyResponse>, SurveyError> {
    let mut order: Vec<(String, Condition)> = Vec::new();
    let mut by_key: BTreeMap<(String, Condition), (SurveyResponse, u64)> = BTreeMap::new();
    for row in table::read(ratings, &RATINGS_CSV_HEADER)? {
        let respondent_id = row.get("respondent_id").to_string();
        if respondent_id.is_empty() {
            return Err(row.error("respondent_id", "empty id").into());
        }
        let condition: Condition = row.parse("condition")?;
        let feature = row.get("feature_id");
        if catalog.get(feature).is_none() {
            return Err(row.error("feature_id", format!("unknown feature `{feature}`")).into());
        }
        let score = score_field(&row, "score")?;
        let key = (respondent_id.clone(), condition);
        let (response, _) = by_key.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            (
                SurveyResponse {
                    respondent_id,
                    condition,
                    ratings: BTreeMap::new(),
                    attention_items: Vec::new(),
                },
                row.line,
            )
        });
        if response.ratings.insert(feature.to_string(), score).is_some() {
            return Err(row
                .error("feature_id", format!("duplicate rating for `{feature}`"))
                .into());
        }
    }
    if let Some(text) = attention {
        for row in table::read(text, &ATTENTION_CSV_HEADER)? {
            let condition: Condition = row.parse("condition")?;
            let key = (row.get("respondent_id").to_string(), condition);
            let Some((response, _)) = by_key.get_mut(&key) else {
                return Err(row
                    .error("respondent_id", format!("no ratings for `{}` ({condition})", key.0))
                    .into());
            };
            response.attention_items.push(AttentionItem {
                expected: score_field(&row, "expected")?,
                given: score_field(&row, "given")?,
            });
        }
    }
    order
        .into_iter()
        .map(|key| {
            let (response, line) = by_key.remove(&key).expect("key recorded");
            response.validate(catalog).map_err(|e| match e {
                SurveyError::MissingRating { feature, .. } => SchemaError::new(
                    line,
                    "feature_id",
                    format!("`{}` ({}) has no rating for `{feature}`", key.0, key.1),
                )
                .into(),
                other => other,
            })?;
            Ok(response)
        })
        .collect()
}

pub fn responses_to_csv(responses: &[SurveyResponse]) -> (String, String) {
    let ratings = table::write(
        &RATINGS_CSV_HEADER,
        responses.iter().flat_map(|r| {
            r.ratings.iter().map(move |(f, s)| {
                [
                    r.respondent_id.clone(),
                    r.condition.to_string(),
                    f.clone(),
                    s.to_string(),
                ]
            })
        }),
    );
    let attention = table::write(
        &ATTENTION_CSV_HEADER,
        responses.iter().flat_map(|r| {
            r.attention_items.iter().map(move |a| {
                [
                    r.respondent_id.clone(),
                    r.condition.to_string(),
                    a.expected.to_string(),
                    a.given.to_string(),
                ]
            })
        }),
    );
    (ratings, attention)
}

pub fn responses_from_json(
    text: &str,
    catalog: &FeatureCatalog,
) -> Result<Vec<SurveyResponse>, SurveyError> {
    let file: ResponsesFile = serde_json::from_str(text)?;
    if file.format_version != FORMAT_VERSION {
        return Err(SchemaError::new(
            0,
            "format_version",
            format!("unsupported version {}", file.format_version),
        )
        .into());
    }
    for r in &file.responses {
        r.validate(catalog)?;
    }
    Ok(file.responses)
}

pub fn responses_to_json(responses: &[SurveyResponse]) -> String {
    let file = ResponsesFile {
        format_version: FORMAT_VERSION,
        responses: responses.to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("responses serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::survey::synthesize_responses;

    fn small_catalog() -> FeatureCatalog {
        use crate::model::{Category, PrivacyFeature};
        FeatureCatalog::new(
            ["a", "b"]
                .iter()
                .map(|id| PrivacyFeature {
                    id: id.to_string(),
                    display_name: id.to_uppercase(),
                    category: Category::Safety,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn parse_small_csv() {
        let ratings = "respondent_id,condition,feature_id,score\n\
                       r1,high,a,10\nr1,high,b,20\nr1,low,a,5\nr1,low,b,7.5\n";
        let attention = "respondent_id,condition,expected,given\nr1,high,37,37\nr1,low,80,79\n";
        let rs = responses_from_csv(ratings, Some(attention), &small_catalog()).unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[1].condition, Condition::LowResolution);
        assert_eq!(rs[1].ratings["b"], 7.5);
        assert_eq!(rs[1].attention_items[0].given, 79.0);
    }

    #[test]
    fn diagnostics() {
        let cat = small_catalog();
        let cases = [
            ("respondent_id,condition,feature_id,score\nr1,mid,a,1\nr1,mid,b,1\n", 2, "condition"),
            ("respondent_id,condition,feature_id,score\nr1,high,z,1\n", 2, "feature_id"),
            ("respondent_id,condition,feature_id,score\nr1,high,a,101\n", 2, "score"),
            ("respondent_id,condition,feature_id,score\nr1,high,a,1\nr1,high,a,2\n", 3, "feature_id"),
            ("respondent_id,condition,feature_id,score\nr1,high,a,1\n", 2, "feature_id"),
        ];
        for (text, line, field) in cases {
            match responses_from_csv(text, None, &cat) {
                Err(SurveyError::Schema(e)) => assert_eq!((e.line, e.field.as_str()), (line, field), "{text}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        let ok = "respondent_id,condition,feature_id,score\nr1,high,a,1\nr1,high,b,1\n";
        let orphan = "respondent_id,condition,expected,given\nr2,high,1,1\n";
        assert!(matches!(
            responses_from_csv(ok, Some(orphan), &cat),
            Err(SurveyError::Schema(SchemaError { line: 2, .. }))
        ));
    }

    #[test]
    fn csv_and_json_round_trip() {
        let cat = FeatureCatalog::standard();
        let rs = synthesize_responses(&crate::fixtures::table1(), 6, 11);
        let (ratings, attention) = responses_to_csv(&rs);
        let back = responses_from_csv(&ratings, Some(&attention), &cat).unwrap();
        assert_eq!(back, rs);
        let back = responses_from_json(&responses_to_json(&rs), &cat).unwrap();
        assert_eq!(back, rs);
    }
}
