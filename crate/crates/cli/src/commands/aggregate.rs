use std::path::Path;

use privres_core::dataset::io::{clip_labels_to_csv, clips_to_json, frames_from_csv, frames_from_json};
use privres_core::dataset::{ClipRecord, FaceRule};
use serde::Serialize;

use super::{is_json, load};
use crate::error::CliError;
use crate::output::{write_config, Emitted};
use crate::AggregateArgs;

#[derive(Serialize)]
struct Params<'a> {
    frames: &'a Path,
    face_rule: FaceRule,
    fps: f64,
}

pub fn run(a: &AggregateArgs, out: &Path) -> Result<Vec<String>, CliError> {
    if !(a.fps > 0.0 && a.fps.is_finite()) {
        return Err(CliError::Usage(format!("--fps must be positive, got {}", a.fps)));
    }
    let annotations = if is_json(&a.frames) {
        load(&a.frames, frames_from_json)?
    } else {
        load(&a.frames, frames_from_csv)?
    };
    let clips = annotations
        .into_iter()
        .map(|c| {
            let duration = c.frames.len() as f64 / a.fps;
            ClipRecord::new(c.clip_id, c.video_id, c.frames, duration, a.face_rule)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::in_file(&a.frames, e))?;

    let labels: Vec<_> = clips.iter().map(|c| (c.clip_id.clone(), c.clip_labels)).collect();
    let mut emitted = Emitted::default();
    emitted.write(out.join("clip_labels.csv"), clip_labels_to_csv(&labels).as_bytes())?;
    emitted.write(out.join("clips.json"), clips_to_json(&clips, a.face_rule).as_bytes())?;
    let params = Params {
        frames: &a.frames,
        face_rule: a.face_rule,
        fps: a.fps,
    };
    emitted.files.push(write_config(out, "aggregate", &params)?);

    let frames: usize = clips.iter().map(|c| c.frames.len()).sum();
    let mut lines = vec![format!(
        "aggregated {frames} frame(s) into {} clip(s) (face rule {})",
        clips.len(),
        a.face_rule
    )];
    lines.extend(super::wrote(&emitted));
    Ok(lines)
}
