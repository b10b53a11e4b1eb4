//! Privacy/utility trade-off modeling over image-sensor resolution.
//!
//! The crate is split along the stages of the pipeline:
//!
//! - [`model`]: privacy feature catalog, accuracy curves, importance weights
//!   and the trade-off objective `S(r) = L_T(r) - λ Σ ω_i L_Pi(r)`.
//! - [`survey`]: survey ingestion, attention-check filtering, per-feature
//!   summaries and the nonparametric tests (Wilcoxon signed-rank, Friedman).
//! - [`dataset`]: clip splitting, frame-to-clip label aggregation, dataset
//!   splits and accuracy evaluation of prediction sets.
//! - [`imaging`]: the resolution transform (box downsampling), nearest and
//!   bicubic upscaling, augmentation and a binary PNM codec.
//! - [`fixtures`]: published summary numbers bundled as data.

pub mod dataset;
pub mod fixtures;
pub mod imaging;
pub mod model;
pub mod survey;
mod table;

pub use table::SchemaError;

/// Version tag written into every structured output record.
pub const FORMAT_VERSION: u32 = 1;
