//! Survey ingestion, attention filtering, summaries and rank tests.

pub mod io;
mod response;
mod stats;
mod summary;
mod synthetic;

use thiserror::Error;

use crate::table::SchemaError;

pub use response::{filter_attention, AttentionItem, Condition, SurveyResponse};
pub use stats::{
    average_ranks, friedman, wilcoxon_signed_rank, TestMethod, TestResult, WilcoxonMode,
    AUTO_EXACT_MAX,
};
pub use summary::{
    paired_scores, score_matrix, summarize, CellStats, ImportanceRow, ImportanceTable,
    SurveySummary, IMPORTANCE_CSV_HEADER,
};
pub use synthetic::{spoil_attention, synthesize_responses};

/// Default attention-check tolerance in slider units.
pub const DEFAULT_TOLERANCE: u32 = 2;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("no valid responses under the {0} condition")]
    EmptyCondition(Condition),
    #[error("no summary cell for `{feature}` under {condition}")]
    MissingCell { feature: String, condition: Condition },
    #[error("respondent `{respondent}` ({condition}) has no rating for `{feature}`")]
    MissingRating {
        respondent: String,
        condition: Condition,
        feature: String,
    },
    #[error("respondent `{respondent}` rated unknown feature `{feature}`")]
    UnknownFeature { respondent: String, feature: String },
    #[error("respondent `{respondent}` has score {score} outside [0, 100]")]
    ScoreOutOfRange { respondent: String, score: f64 },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("paired samples differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("non-finite score")]
    NonFinite,
    #[error("degenerate matrix shape {rows}x{cols} (need at least 2x2, rectangular)")]
    DegenerateShape { rows: usize, cols: usize },
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
