//! Clip-level annotation model: windowing, frame-to-clip aggregation,
//! seeded splits and accuracy evaluation.

mod aggregate;
mod clips;
mod eval;
pub mod io;
mod labels;
mod split;

use thiserror::Error;

use crate::table::SchemaError;

pub use aggregate::{
    aggregate_activity, aggregate_clip, aggregate_face, aggregate_nudity, aggregate_property,
    aggregate_relationship, FaceRule,
};
pub use clips::{split_clips, ClipRecord};
pub use eval::{
    accuracy_by_resolution, build_accuracy_curve, evaluate_accuracy, AccuracyRow, PredictionSet,
};
pub use labels::{Activity, Face, FrameLabelSet, Label, Nudity, Property, Relationship, Task};
pub use split::{random_split, split_sizes, DatasetSplit, DEFAULT_FRACTIONS};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("clip `{clip}` has no frames{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    EmptyClip { clip: String, line: Option<u64> },
    #[error("stored clip labels of `{0}` do not follow from its frames")]
    InconsistentClipLabels(String),
    #[error("invalid clip windowing: {0}")]
    InvalidClipSpec(String),
    #[error("split fractions {0:?} must be positive and sum to 1")]
    BadFractions([f64; 3]),
    #[error("duplicate clip id `{0}`")]
    DuplicateClip(String),
    #[error("prediction for unknown clip `{0}`")]
    UnknownClip(String),
    #[error("prediction set is empty")]
    EmptyPredictions,
    #[error("resolution must be positive, got {0}")]
    InvalidResolution(u32),
    #[error("clip `{clip}`: label `{label}` is not a {task} label")]
    WrongTaskLabel { clip: String, task: Task, label: String },
    #[error("more than one {task} prediction set at r={resolution}")]
    DuplicatePredictionSet { task: Task, resolution: u32 },
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
