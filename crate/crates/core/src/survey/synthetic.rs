//! Seeded synthetic respondents whose per-cell means match a target table.
//!
//! Published summaries come without raw responses; this generator produces
//! response sets that reproduce the table means so the ingestion, filtering
//! and selection path can be exercised end to end.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::response::{AttentionItem, Condition, SurveyResponse};
use super::summary::{CellStats, ImportanceTable};

/// Generates `respondents` respondents, each answering under both
/// conditions with two passing attention items per condition.
///
/// Each cell's scores are `mean ± d` in symmetric pairs (plus one score at
/// the mean when the count is odd), so every cell mean equals the target up
/// to floating-point summation. Deviations are scaled toward the target
/// standard deviation and clipped to keep scores inside `[0, 100]`.
pub fn synthesize_responses(
    table: &ImportanceTable,
    respondents: usize,
    seed: u64,
) -> Vec<SurveyResponse> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<String> = (0..respondents).map(|i| format!("s{i:04}")).collect();
    let mut responses: BTreeMap<(usize, Condition), SurveyResponse> = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        for condition in Condition::ALL {
            let attention_items = (0..2)
                .map(|_| {
                    let v = f64::from(rng.random_range(0u8..=100));
                    AttentionItem { expected: v, given: v }
                })
                .collect();
            responses.insert(
                (i, condition),
                SurveyResponse {
                    respondent_id: id.clone(),
                    condition,
                    ratings: BTreeMap::new(),
                    attention_items,
                },
            );
        }
    }
    for row in &table.rows {
        for (condition, cell) in [
            (Condition::HighResolution, row.high),
            (Condition::LowResolution, row.low),
        ] {
            let scores = cell_scores(cell, respondents, &mut rng);
            for (i, s) in scores.into_iter().enumerate() {
                responses
                    .get_mut(&(i, condition))
                    .expect("response exists")
                    .ratings
                    .insert(row.feature_id.clone(), s);
            }
        }
    }
    responses.into_values().collect()
}

fn cell_scores(cell: CellStats, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mean = cell.mean.clamp(0.0, 100.0);
    let half = n / 2;
    let magnitudes: Vec<f64> = (0..half)
        .map(|_| rng.sample::<f64, _>(StandardNormal).abs())
        .collect();
    // pairs contribute 2 d^2 each to the sum of squares
    let ss: f64 = magnitudes.iter().map(|m| 2.0 * m * m).sum();
    let scale = if ss > 0.0 && n > 1 {
        cell.std * ((n - 1) as f64 / ss).sqrt()
    } else {
        0.0
    };
    let limit = mean.min(100.0 - mean);
    let mut scores = Vec::with_capacity(n);
    for m in magnitudes {
        let d = (m * scale).min(limit);
        scores.push(mean + d);
        scores.push(mean - d);
    }
    if n % 2 == 1 {
        scores.push(mean);
    }
    // interleave so high and low scores spread across respondents
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    order.into_iter().map(|i| scores[i]).collect()
}

/// Makes the first attention item of the first `count` responses fail by
/// moving the given score 50 points away from the expected one.
pub fn spoil_attention(responses: &mut [SurveyResponse], count: usize) {
    for r in responses.iter_mut().take(count) {
        if let Some(item) = r.attention_items.first_mut() {
            item.given = if item.expected >= 50.0 {
                item.expected - 50.0
            } else {
                item.expected + 50.0
            };
        }
    }
}
