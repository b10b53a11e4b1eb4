//! Frame-to-clip label aggregation.

use serde::{Deserialize, Serialize};

use super::labels::{Activity, Face, FrameLabelSet, Nudity, Property, Relationship};
use super::DatasetError;

/// How many `Yes` frames make a clip's face label `Yes`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceRule {
    /// More than one frame.
    #[default]
    AtLeastTwo,
    AtLeastOne,
}

impl FaceRule {
    fn min_yes(self) -> usize {
        match self {
            FaceRule::AtLeastTwo => 2,
            FaceRule::AtLeastOne => 1,
        }
    }
}

impl std::fmt::Display for FaceRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FaceRule::AtLeastTwo => "at-least-two",
            FaceRule::AtLeastOne => "at-least-one",
        })
    }
}

impl std::str::FromStr for FaceRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "at-least-two" | "2" => Ok(FaceRule::AtLeastTwo),
            "at-least-one" | "1" => Ok(FaceRule::AtLeastOne),
            _ => Err(format!("unknown face rule `{s}` (expected at-least-two or at-least-one)")),
        }
    }
}

fn non_empty<T>(frames: &[T]) -> Result<(), DatasetError> {
    if frames.is_empty() {
        Err(DatasetError::EmptyClip { clip: String::new(), line: None })
    } else {
        Ok(())
    }
}

pub fn aggregate_nudity(frames: &[Nudity]) -> Result<Nudity, DatasetError> {
    non_empty(frames)?;
    Ok(if frames.contains(&Nudity::NakedOrSemiNaked) {
        Nudity::NakedOrSemiNaked
    } else if frames.contains(&Nudity::FullyClothed) {
        Nudity::FullyClothed
    } else {
        Nudity::NoPerson
    })
}

pub fn aggregate_face(frames: &[Face], rule: FaceRule) -> Result<Face, DatasetError> {
    non_empty(frames)?;
    let yes = frames.iter().filter(|&&f| f == Face::Yes).count();
    Ok(if yes >= rule.min_yes() {
        Face::Yes
    } else if frames.iter().all(|&f| f == Face::NoPerson) {
        Face::NoPerson
    } else {
        Face::No
    })
}

pub fn aggregate_property(frames: &[Property]) -> Result<Property, DatasetError> {
    non_empty(frames)?;
    Ok(if frames.contains(&Property::Yes) {
        Property::Yes
    } else if frames.iter().all(|&f| f == Property::NoPerson) {
        Property::NoPerson
    } else {
        Property::No
    })
}

pub fn aggregate_relationship(frames: &[Relationship]) -> Result<Relationship, DatasetError> {
    non_empty(frames)?;
    let count = |l| frames.iter().filter(|&&f| f == l).count();
    let intimate = count(Relationship::Intimate);
    let non_intimate = count(Relationship::NonIntimate);
    Ok(if intimate >= 1 && intimate >= non_intimate {
        Relationship::Intimate
    } else if non_intimate >= 1 {
        Relationship::NonIntimate
    } else if count(Relationship::OnlyOnePerson) >= 1 {
        Relationship::OnlyOnePerson
    } else {
        Relationship::NoPerson
    })
}

/// Most frequent activity; ties go to the label seen first.
pub fn aggregate_activity(frames: &[Activity]) -> Result<Activity, DatasetError> {
    non_empty(frames)?;
    let mut best = frames[0];
    let mut best_count = 0;
    for (i, &a) in frames.iter().enumerate() {
        if frames[..i].contains(&a) {
            continue;
        }
        let c = frames.iter().filter(|&&f| f == a).count();
        if c > best_count {
            best = a;
            best_count = c;
        }
    }
    Ok(best)
}

/// Applies every per-task rule to a clip's frames.
pub fn aggregate_clip(frames: &[FrameLabelSet], face_rule: FaceRule) -> Result<FrameLabelSet, DatasetError> {
    non_empty(frames)?;
    fn col<T>(frames: &[FrameLabelSet], f: impl Fn(&FrameLabelSet) -> T) -> Vec<T> {
        frames.iter().map(f).collect()
    }
    Ok(FrameLabelSet {
        nudity: aggregate_nudity(&col(frames, |s| s.nudity))?,
        face: aggregate_face(&col(frames, |s| s.face), face_rule)?,
        property: aggregate_property(&col(frames, |s| s.property))?,
        relationship: aggregate_relationship(&col(frames, |s| s.relationship))?,
        activity: aggregate_activity(&col(frames, |s| s.activity))?,
    })
}
