//! Trade-off model: catalog, curves, weights and the objective.

mod catalog;
mod curve;
pub mod io;
mod tradeoff;
mod weights;

use thiserror::Error;

use crate::table::SchemaError;

pub use catalog::{Category, FeatureCatalog, PrivacyFeature};
pub use curve::{interpolate, AccuracyCurve, CurveSample, Interpolation, Provenance};
pub use tradeoff::{
    objective, optimal_range, sweep, ObjectiveCurve, ObjectivePoint, OptimalRange,
    RecognizerKind, TradeoffModel, DEFAULT_EPSILON,
};
pub use weights::{derive_weights, select_features, ImportanceWeights};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("feature `{0}` has no mean score")]
    MissingFeature(String),
    #[error("threshold {0} outside [0, 100]")]
    InvalidThreshold(f64),
    #[error("no features selected")]
    EmptySelection,
    #[error("feature `{id}` has non-positive score {score}")]
    NonPositiveScore { id: String, score: f64 },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("curve `{0}` has no samples")]
    EmptyCurve(String),
    #[error("curve `{label}`: {reason}")]
    InvalidCurve { label: String, reason: String },
    #[error("curve `{label}` samples resolution {resolution} more than once")]
    DuplicateResolution { label: String, resolution: u32 },
    #[error("resolution {r} outside [{lo}, {hi}] for `{label}`")]
    OutOfDomain { label: String, r: f64, lo: u32, hi: u32 },
    #[error("inconsistent model: {0}")]
    ModelInconsistent(String),
    #[error("λ must satisfy λ > 0 (got {0})")]
    InvalidLambda(f64),
    #[error("epsilon must be non-negative (got {0})")]
    InvalidEpsilon(f64),
    #[error("empty resolution or λ grid")]
    EmptyGrid,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
