use serde::{Deserialize, Serialize};

use super::aggregate::{aggregate_clip, FaceRule};
use super::labels::FrameLabelSet;
use super::DatasetError;

/// Inclusive frame windows of `round(fps * clip_seconds)` frames.
///
/// A trailing remainder shorter than half a window is merged into the
/// previous clip; otherwise it becomes its own, shorter clip.
pub fn split_clips(frame_count: u64, fps: f64, clip_seconds: f64) -> Result<Vec<(u64, u64)>, DatasetError> {
    if frame_count == 0 {
        return Err(DatasetError::InvalidClipSpec("frame_count must be at least 1".into()));
    }
    if !(fps > 0.0 && fps.is_finite() && clip_seconds > 0.0 && clip_seconds.is_finite()) {
        return Err(DatasetError::InvalidClipSpec(format!(
            "fps ({fps}) and clip_seconds ({clip_seconds}) must be positive"
        )));
    }
    let window = ((fps * clip_seconds).round() as u64).max(1);
    let mut clips: Vec<(u64, u64)> = (0..frame_count / window)
        .map(|i| (i * window, (i + 1) * window - 1))
        .collect();
    let remainder = frame_count % window;
    if remainder > 0 {
        let start = frame_count - remainder;
        match clips.last_mut() {
            Some(last) if 2 * remainder < window => last.1 = frame_count - 1,
            _ => clips.push((start, frame_count - 1)),
        }
    }
    Ok(clips)
}

/// An annotated clip: per-frame labels plus the clip-level labels derived
/// from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClipRecord {
    pub clip_id: String,
    pub video_id: String,
    pub frames: Vec<FrameLabelSet>,
    pub clip_labels: FrameLabelSet,
    /// Seconds.
    pub duration: f64,
}

impl ClipRecord {
    pub fn new(
        clip_id: impl Into<String>,
        video_id: impl Into<String>,
        frames: Vec<FrameLabelSet>,
        duration: f64,
        face_rule: FaceRule,
    ) -> Result<Self, DatasetError> {
        let clip_id = clip_id.into();
        let clip_labels =
            aggregate_clip(&frames, face_rule).map_err(|_| DatasetError::EmptyClip { clip: clip_id.clone(), line: None })?;
        Ok(Self {
            clip_id,
            video_id: video_id.into(),
            frames,
            clip_labels,
            duration,
        })
    }

    /// Checks that the stored clip labels follow from the frames.
    pub fn verify(&self, face_rule: FaceRule) -> Result<(), DatasetError> {
        let expected = aggregate_clip(&self.frames, face_rule)
            .map_err(|_| DatasetError::EmptyClip { clip: self.clip_id.clone(), line: None })?;
        if expected != self.clip_labels {
            return Err(DatasetError::InconsistentClipLabels(self.clip_id.clone()));
        }
        Ok(())
    }
}
