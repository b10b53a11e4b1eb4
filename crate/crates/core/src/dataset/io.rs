//! Annotation and prediction files.
//!
//! Frame labels (long CSV): `clip_id,frame_index,task,label`, one row per
//! frame and task. A row with only a clip id declares a clip with no frames,
//! which is rejected. Clip labels: `clip_id,task,label`. Predictions:
//! `clip_id,task,resolution,label`. Accuracies: `task,resolution,accuracy,n`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::aggregate::FaceRule;
use super::clips::ClipRecord;
use super::eval::{AccuracyRow, PredictionSet};
use super::labels::{FrameLabelSet, Label, Task};
use super::DatasetError;
use crate::table::{self, SchemaError};
use crate::FORMAT_VERSION;

pub const FRAME_CSV_HEADER: [&str; 4] = ["clip_id", "frame_index", "task", "label"];
pub const CLIP_LABEL_CSV_HEADER: [&str; 3] = ["clip_id", "task", "label"];
pub const PREDICTION_CSV_HEADER: [&str; 4] = ["clip_id", "task", "resolution", "label"];
pub const ACCURACY_CSV_HEADER: [&str; 4] = ["task", "resolution", "accuracy", "n"];

/// Frame labels of one clip, in frame-index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameAnnotations {
    pub clip_id: String,
    #[serde(default)]
    pub video_id: String,
    pub frames: Vec<FrameLabelSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramesFile {
    pub format_version: u32,
    pub clips: Vec<FrameAnnotations>,
}

fn label_field(row: &table::Row<'_>, task: Task) -> Result<Label, SchemaError> {
    task.parse_label(row.get("label"))
        .map_err(|e| row.error("label", e))
}

fn clip_id_field(row: &table::Row<'_>) -> Result<String, SchemaError> {
    let id = row.get("clip_id");
    if id.is_empty() {
        return Err(row.error("clip_id", "empty clip id"));
    }
    Ok(id.to_string())
}

pub fn frames_from_csv(text: &str) -> Result<Vec<FrameAnnotations>, DatasetError> {
    // clip -> frame index -> (first line, labels)
    let mut order: Vec<String> = Vec::new();
    let mut clips: BTreeMap<String, (u64, BTreeMap<u64, (u64, Vec<Label>)>)> = BTreeMap::new();
    for row in table::read(text, &FRAME_CSV_HEADER)? {
        let clip_id = clip_id_field(&row)?;
        let entry = clips.entry(clip_id.clone()).or_insert_with(|| {
            order.push(clip_id.clone());
            (row.line, BTreeMap::new())
        });
        if ["frame_index", "task", "label"].iter().all(|f| row.get(f).is_empty()) {
            continue;
        }
        let index: u64 = row.parse("frame_index")?;
        let task: Task = row.parse("task")?;
        let label = label_field(&row, task)?;
        let (_, labels) = entry.1.entry(index).or_insert_with(|| (row.line, Vec::new()));
        if labels.iter().any(|l| l.task() == task) {
            return Err(row
                .error("task", format!("duplicate {task} label for `{clip_id}` frame {index}"))
                .into());
        }
        labels.push(label);
    }
    order
        .into_iter()
        .map(|clip_id| {
            let (line, frames) = clips.remove(&clip_id).expect("clip recorded");
            if frames.is_empty() {
                return Err(DatasetError::EmptyClip {
                    clip: clip_id,
                    line: Some(line),
                });
            }
            let frames = frames
                .into_iter()
                .map(|(index, (line, labels))| {
                    FrameLabelSet::from_labels(&labels).ok_or_else(|| {
                        let missing: Vec<&str> = Task::ALL
                            .iter()
                            .filter(|t| !labels.iter().any(|l| l.task() == **t))
                            .map(|t| t.as_str())
                            .collect();
                        SchemaError::new(
                            line,
                            "task",
                            format!("`{clip_id}` frame {index} lacks {}", missing.join(", ")),
                        )
                        .into()
                    })
                })
                .collect::<Result<_, DatasetError>>()?;
            Ok(FrameAnnotations {
                clip_id,
                video_id: String::new(),
                frames,
            })
        })
        .collect()
}

pub fn frames_to_csv(clips: &[FrameAnnotations]) -> String {
    table::write(
        &FRAME_CSV_HEADER,
        clips.iter().flat_map(|c| {
            c.frames.iter().enumerate().flat_map(move |(i, f)| {
                Task::ALL.iter().map(move |&t| {
                    [c.clip_id.clone(), i.to_string(), t.to_string(), f.get(t).to_string()]
                })
            })
        }),
    )
}

pub fn clip_labels_to_csv(labels: &[(String, FrameLabelSet)]) -> String {
    table::write(
        &CLIP_LABEL_CSV_HEADER,
        labels.iter().flat_map(|(id, l)| {
            Task::ALL
                .iter()
                .map(move |&t| [id.clone(), t.to_string(), l.get(t).to_string()])
        }),
    )
}

/// Parses clip-level labels; every clip needs one label per task.
pub fn clip_labels_from_csv(text: &str) -> Result<BTreeMap<String, FrameLabelSet>, DatasetError> {
    let mut raw: BTreeMap<String, (u64, Vec<Label>)> = BTreeMap::new();
    for row in table::read(text, &CLIP_LABEL_CSV_HEADER)? {
        let clip_id = clip_id_field(&row)?;
        let task: Task = row.parse("task")?;
        let label = label_field(&row, task)?;
        let (_, labels) = raw.entry(clip_id.clone()).or_insert_with(|| (row.line, Vec::new()));
        if labels.iter().any(|l| l.task() == task) {
            return Err(row
                .error("task", format!("duplicate {task} label for `{clip_id}`"))
                .into());
        }
        labels.push(label);
    }
    raw.into_iter()
        .map(|(id, (line, labels))| match FrameLabelSet::from_labels(&labels) {
            Some(set) => Ok((id, set)),
            None => Err(SchemaError::new(line, "task", format!("`{id}` lacks a label for some task")).into()),
        })
        .collect()
}

/// Parses predictions into one set per (task, resolution), ordered by task
/// then resolution.
pub fn predictions_from_csv(text: &str) -> Result<Vec<PredictionSet>, DatasetError> {
    let mut groups: BTreeMap<(Task, u32), BTreeMap<String, Label>> = BTreeMap::new();
    for row in table::read(text, &PREDICTION_CSV_HEADER)? {
        let clip_id = clip_id_field(&row)?;
        let task: Task = row.parse("task")?;
        let resolution: u32 = row.parse("resolution")?;
        if resolution == 0 {
            return Err(row.error("resolution", "resolution must be positive").into());
        }
        let label = label_field(&row, task)?;
        if groups
            .entry((task, resolution))
            .or_default()
            .insert(clip_id.clone(), label)
            .is_some()
        {
            return Err(row
                .error("clip_id", format!("duplicate prediction for `{clip_id}` ({task}, r={resolution})"))
                .into());
        }
    }
    groups
        .into_iter()
        .map(|((task, r), entries)| PredictionSet::new(task, r, entries))
        .collect()
}

pub fn predictions_to_csv(sets: &[PredictionSet]) -> String {
    table::write(
        &PREDICTION_CSV_HEADER,
        sets.iter().flat_map(|s| {
            s.entries().iter().map(move |(clip, l)| {
                [clip.clone(), s.task().to_string(), s.resolution().to_string(), l.to_string()]
            })
        }),
    )
}

pub fn accuracy_to_csv(rows: &[AccuracyRow]) -> String {
    table::write(
        &ACCURACY_CSV_HEADER,
        rows.iter().map(|r| {
            [
                r.task.to_string(),
                r.resolution.to_string(),
                r.accuracy.to_string(),
                r.n.to_string(),
            ]
        }),
    )
}

pub fn accuracy_from_csv(text: &str) -> Result<Vec<AccuracyRow>, SchemaError> {
    table::read(text, &ACCURACY_CSV_HEADER)?
        .iter()
        .map(|row| {
            let accuracy: f64 = row.parse("accuracy")?;
            if !(0.0..=1.0).contains(&accuracy) {
                return Err(row.error("accuracy", format!("{accuracy} outside [0, 1]")));
            }
            Ok(AccuracyRow {
                task: row.parse("task")?,
                resolution: row.parse("resolution")?,
                accuracy,
                n: row.parse("n")?,
            })
        })
        .collect()
}

fn check_version(found: u32) -> Result<(), DatasetError> {
    if found != FORMAT_VERSION {
        return Err(SchemaError::new(0, "format_version", format!("unsupported version {found}")).into());
    }
    Ok(())
}

/// Parses a frames file; clips with no frames are rejected.
pub fn frames_from_json(text: &str) -> Result<Vec<FrameAnnotations>, DatasetError> {
    let file: FramesFile = serde_json::from_str(text)?;
    check_version(file.format_version)?;
    if let Some(c) = file.clips.iter().find(|c| c.frames.is_empty()) {
        return Err(DatasetError::EmptyClip {
            clip: c.clip_id.clone(),
            line: None,
        });
    }
    Ok(file.clips)
}

pub fn frames_to_json(clips: &[FrameAnnotations]) -> String {
    let file = FramesFile {
        format_version: FORMAT_VERSION,
        clips: clips.to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("frames serialize") + "\n"
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClipsFile {
    pub format_version: u32,
    #[serde(default)]
    pub face_rule: FaceRule,
    pub clips: Vec<ClipRecord>,
}

pub fn clips_to_json(clips: &[ClipRecord], face_rule: FaceRule) -> String {
    let file = ClipsFile {
        format_version: FORMAT_VERSION,
        face_rule,
        clips: clips.to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("clips serialize") + "\n"
}

/// Parses a clip file and checks every clip's labels against its frames
/// under the file's face rule.
pub fn clips_from_json(text: &str) -> Result<ClipsFile, DatasetError> {
    let file: ClipsFile = serde_json::from_str(text)?;
    check_version(file.format_version)?;
    for clip in &file.clips {
        clip.verify(file.face_rule)?;
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::labels::*;

    const FRAMES: &str = "clip_id,frame_index,task,label
c1,0,activity,feeding
c1,0,nudity,fully_clothed
c1,0,face,yes
c1,0,property,no
c1,0,relationship,only_one_person
c1,1,activity,feeding
c1,1,nudity,naked_or_semi_naked
c1,1,face,yes
c1,1,property,no_person
c1,1,relationship,intimate
";

    #[test]
    fn frames_round_trip() {
        let clips = frames_from_csv(FRAMES).unwrap();
        assert_eq!(clips.len(), 1);
        assert_eq!(clips[0].frames[1].nudity, Nudity::NakedOrSemiNaked);
        let text = frames_to_csv(&clips);
        assert_eq!(frames_from_csv(&text).unwrap(), clips);
        assert_eq!(frames_to_csv(&frames_from_csv(&text).unwrap()), text);
        assert_eq!(frames_from_json(&frames_to_json(&clips)).unwrap(), clips);
        let empty = r#"{"format_version": 1, "clips": [{"clip_id": "z", "frames": []}]}"#;
        assert!(matches!(frames_from_json(empty), Err(DatasetError::EmptyClip { .. })));
    }

    #[test]
    fn frame_diagnostics() {
        let bad_label = FRAMES.replace("c1,1,face,yes", "c1,1,face,maybe");
        match frames_from_csv(&bad_label) {
            Err(DatasetError::Schema(e)) => assert_eq!((e.line, e.field.as_str()), (9, "label")),
            other => panic!("{other:?}"),
        }
        let missing = FRAMES.replace("c1,1,property,no_person\n", "");
        match frames_from_csv(&missing) {
            Err(DatasetError::Schema(e)) => assert_eq!((e.line, e.field.as_str()), (7, "task")),
            other => panic!("{other:?}"),
        }
        let empty = format!("{FRAMES}c2,,,\n");
        assert!(matches!(
            frames_from_csv(&empty),
            Err(DatasetError::EmptyClip { line: Some(12), .. })
        ));
        let dup = format!("{FRAMES}c1,1,face,no\n");
        match frames_from_csv(&dup) {
            Err(DatasetError::Schema(e)) => assert_eq!((e.line, e.field.as_str()), (12, "task")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn predictions_group_by_task_and_resolution() {
        let text = "clip_id,task,resolution,label\nc1,face,30,yes\nc2,face,30,no\nc1,face,15,no\nc1,activity,15,feeding\n";
        let sets = predictions_from_csv(text).unwrap();
        let keys: Vec<(Task, u32, usize)> =
            sets.iter().map(|s| (s.task(), s.resolution(), s.entries().len())).collect();
        assert_eq!(keys, vec![(Task::Activity, 15, 1), (Task::Face, 15, 1), (Task::Face, 30, 2)]);
        let back = predictions_from_csv(&predictions_to_csv(&sets)).unwrap();
        assert_eq!(back, sets);
        let dup = format!("{text}c1,face,30,no\n");
        assert!(matches!(predictions_from_csv(&dup), Err(DatasetError::Schema(SchemaError { line: 6, .. }))));
    }

    #[test]
    fn clip_json_round_trip_and_verification() {
        let ann = frames_from_csv(FRAMES).unwrap();
        let clip = ClipRecord::new("c1", "v1", ann[0].frames.clone(), 2.0, FaceRule::AtLeastTwo).unwrap();
        assert_eq!(clip.clip_labels.face, Face::Yes);
        assert_eq!(clip.clip_labels.relationship, Relationship::Intimate);
        let text = clips_to_json(std::slice::from_ref(&clip), FaceRule::AtLeastTwo);
        assert_eq!(clips_from_json(&text).unwrap().clips, vec![clip.clone()]);
        let mut tampered = clip;
        tampered.clip_labels.property = Property::Yes;
        let text = clips_to_json(&[tampered], FaceRule::AtLeastTwo);
        assert!(matches!(clips_from_json(&text), Err(DatasetError::InconsistentClipLabels(_))));
    }

    #[test]
    fn clip_labels_round_trip() {
        let ann = frames_from_csv(FRAMES).unwrap();
        let labels = vec![("c1".to_string(), ann[0].frames[0])];
        let text = clip_labels_to_csv(&labels);
        let back = clip_labels_from_csv(&text).unwrap();
        assert_eq!(back["c1"], ann[0].frames[0]);
    }
}
