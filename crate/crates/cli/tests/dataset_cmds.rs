mod common;

use std::collections::BTreeMap;

use common::{privres, read, s, write};
use privres_core::dataset::io::{accuracy_from_csv, clip_labels_from_csv, clips_from_json, frames_to_json, frames_from_csv};
use privres_core::dataset::{Activity, Face, FaceRule, FrameLabelSet, Nudity, Property, Relationship, Task};
use privres_core::model::io::curves_from_csv;

// (nudity, face, property, relationship, activity) per frame
const CLIPS: &[(&str, &[[&str; 5]])] = &[
    (
        "c1",
        &[
            ["fully_clothed", "yes", "no", "only_one_person", "feeding"],
            ["naked_or_semi_naked", "no", "yes", "intimate", "feeding"],
            ["fully_clothed", "yes", "no", "non_intimate", "entertainment"],
            ["no_person", "no_person", "no_person", "no_person", "entertainment"],
        ],
    ),
    (
        "c2",
        &[
            ["fully_clothed", "yes", "no", "only_one_person", "personal_hygiene"],
            ["fully_clothed", "no", "no", "only_one_person", "personal_hygiene"],
        ],
    ),
    ("c3", &[["no_person", "no_person", "no_person", "no_person", "functional_mobility"]]),
];

fn frames_csv() -> String {
    let tasks = ["nudity", "face", "property", "relationship", "activity"];
    let mut text = String::from("clip_id,frame_index,task,label\n");
    for (clip, frames) in CLIPS {
        for (i, labels) in frames.iter().enumerate() {
            for (task, label) in tasks.iter().zip(labels) {
                text.push_str(&format!("{clip},{i},{task},{label}\n"));
            }
        }
    }
    text
}

fn set(n: Nudity, f: Face, p: Property, r: Relationship, a: Activity) -> FrameLabelSet {
    FrameLabelSet {
        nudity: n,
        face: f,
        property: p,
        relationship: r,
        activity: a,
    }
}

fn expected(rule: FaceRule) -> BTreeMap<String, FrameLabelSet> {
    let c2_face = match rule {
        FaceRule::AtLeastTwo => Face::No,
        FaceRule::AtLeastOne => Face::Yes,
    };
    BTreeMap::from([
        (
            "c1".to_string(),
            set(Nudity::NakedOrSemiNaked, Face::Yes, Property::Yes, Relationship::Intimate, Activity::Feeding),
        ),
        (
            "c2".to_string(),
            set(Nudity::FullyClothed, c2_face, Property::No, Relationship::OnlyOnePerson, Activity::PersonalHygiene),
        ),
        (
            "c3".to_string(),
            set(Nudity::NoPerson, Face::NoPerson, Property::NoPerson, Relationship::NoPerson, Activity::FunctionalMobility),
        ),
    ])
}

#[test]
fn aggregate_follows_the_rules() {
    let dir = tempfile::tempdir().unwrap();
    let frames = write(dir.path(), "frames.csv", frames_csv().as_bytes());
    for (rule, flag) in [(FaceRule::AtLeastTwo, "at-least-two"), (FaceRule::AtLeastOne, "at-least-one")] {
        let out = dir.path().join(flag);
        let run = privres(&out, &["aggregate", "--frames", s(&frames), "--face-rule", flag]);
        assert_eq!(run.code, 0, "{}", run.stderr);
        assert!(run.stdout.contains("aggregated 7 frame(s) into 3 clip(s)"), "{}", run.stdout);
        let labels = clip_labels_from_csv(&read(out.join("clip_labels.csv"))).unwrap();
        assert_eq!(labels, expected(rule), "{flag}");

        let clips = clips_from_json(&read(out.join("clips.json"))).unwrap();
        assert_eq!(clips.face_rule, rule);
        let durations: Vec<f64> = clips.clips.iter().map(|c| c.duration).collect();
        assert_eq!(durations, vec![4.0 / 30.0, 2.0 / 30.0, 1.0 / 30.0]);
    }
}

#[test]
fn single_frame_clips_keep_their_labels() {
    let dir = tempfile::tempdir().unwrap();
    let text = "clip_id,frame_index,task,label
s1,0,nudity,naked_or_semi_naked
s1,0,face,yes
s1,0,property,yes
s1,0,relationship,non_intimate
s1,0,activity,intimacy
";
    let frames = write(dir.path(), "frames.csv", text.as_bytes());
    for flag in ["at-least-one", "at-least-two"] {
        let out = dir.path().join(flag);
        assert_eq!(privres(&out, &["aggregate", "--frames", s(&frames), "--face-rule", flag]).code, 0);
        let labels = clip_labels_from_csv(&read(out.join("clip_labels.csv"))).unwrap();
        let s1 = labels["s1"];
        assert_eq!(s1.nudity, Nudity::NakedOrSemiNaked);
        assert_eq!(s1.property, Property::Yes);
        assert_eq!(s1.relationship, Relationship::NonIntimate);
        assert_eq!(s1.activity, Activity::Intimacy);
        // one `yes` frame can never reach the two-frame rule
        let face = if flag == "at-least-one" { Face::Yes } else { Face::No };
        assert_eq!(s1.face, face);
    }
}

#[test]
fn empty_clip_row_is_diagnosed() {
    let dir = tempfile::tempdir().unwrap();
    let text = frames_csv() + "c4,,,\n";
    let frames = write(dir.path(), "frames.csv", text.as_bytes());
    let run = privres(dir.path(), &["aggregate", "--frames", s(&frames)]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("`c4` has no frames"), "{}", run.stderr);
    assert!(run.stderr.contains("line 37"), "{}", run.stderr);
}

#[test]
fn unknown_label_names_the_row() {
    let dir = tempfile::tempdir().unwrap();
    let text = frames_csv().replacen("feeding", "eating", 1);
    let frames = write(dir.path(), "frames.csv", text.as_bytes());
    let run = privres(dir.path(), &["aggregate", "--frames", s(&frames)]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 6, field `label`"), "{}", run.stderr);
}

#[test]
fn json_frames_give_the_same_clips() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "frames.csv", frames_csv().as_bytes());
    let json = frames_to_json(&frames_from_csv(&frames_csv()).unwrap());
    let json = write(dir.path(), "frames.json", json.as_bytes());
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(privres(&a, &["aggregate", "--frames", s(&csv)]).code, 0);
    assert_eq!(privres(&b, &["aggregate", "--frames", s(&json)]).code, 0);
    for name in ["clip_labels.csv", "clips.json"] {
        assert_eq!(read(a.join(name)), read(b.join(name)), "{name}");
    }
}

#[test]
fn eval_scores_predictions_against_aggregated_truth() {
    let dir = tempfile::tempdir().unwrap();
    let frames = write(dir.path(), "frames.csv", frames_csv().as_bytes());
    let agg = dir.path().join("agg");
    assert_eq!(privres(&agg, &["aggregate", "--frames", s(&frames)]).code, 0);

    // truth: nudity c1 naked, c2 clothed, c3 no_person; face c1 yes, c2 no, c3 no_person
    let predictions = write(
        dir.path(),
        "pred.csv",
        b"clip_id,task,resolution,label
c1,nudity,15,no_person
c2,nudity,15,no_person
c3,nudity,15,no_person
c1,nudity,240,naked_or_semi_naked
c2,nudity,240,fully_clothed
c3,nudity,240,fully_clothed
c1,face,100,yes
c2,face,100,no
",
    );
    for truth in ["clip_labels.csv", "clips.json"] {
        let out = dir.path().join(format!("eval-{truth}"));
        let run = privres(
            &out,
            &["eval", "--predictions", s(&predictions), "--truth", s(&agg.join(truth))],
        );
        assert_eq!(run.code, 0, "{}", run.stderr);
        let rows = accuracy_from_csv(&read(out.join("accuracy.csv"))).unwrap();
        let got: Vec<(Task, u32, f64, usize)> = rows.iter().map(|r| (r.task, r.resolution, r.accuracy, r.n)).collect();
        assert_eq!(
            got,
            vec![
                (Task::Nudity, 15, 1.0 / 3.0, 3),
                (Task::Nudity, 240, 2.0 / 3.0, 3),
                (Task::Face, 100, 1.0, 2),
            ]
        );
        let curves = curves_from_csv(&read(out.join("curves.csv"))).unwrap();
        let labels: Vec<&str> = curves.iter().map(|c| c.label()).collect();
        assert_eq!(labels, vec!["nudity", "identifiable_face"]);
    }
}

#[test]
fn eval_rejects_unknown_clips_and_empty_input() {
    let dir = tempfile::tempdir().unwrap();
    let frames = write(dir.path(), "frames.csv", frames_csv().as_bytes());
    let agg = dir.path().join("agg");
    assert_eq!(privres(&agg, &["aggregate", "--frames", s(&frames)]).code, 0);
    let truth = agg.join("clip_labels.csv");

    let p = write(dir.path(), "p1.csv", b"clip_id,task,resolution,label\nzz,nudity,15,no_person\n");
    let run = privres(dir.path(), &["eval", "--predictions", s(&p), "--truth", s(&truth)]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("unknown clip `zz`"), "{}", run.stderr);

    let p = write(dir.path(), "p2.csv", b"clip_id,task,resolution,label\n");
    let run = privres(dir.path(), &["eval", "--predictions", s(&p), "--truth", s(&truth)]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("empty"), "{}", run.stderr);

    let p = write(dir.path(), "p3.csv", b"clip_id,task,resolution,label\nc1,face,15,fully_clothed\n");
    let run = privres(dir.path(), &["eval", "--predictions", s(&p), "--truth", s(&truth)]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 2, field `label`"), "{}", run.stderr);
}
