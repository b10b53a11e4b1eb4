//! Exhaustive comparison of the clip aggregation rules against a
//! table-driven evaluator over every frame sequence of length 1 to 4.

use privres_core::dataset::{
    aggregate_activity, aggregate_face, aggregate_nudity, aggregate_property,
    aggregate_relationship, Activity, Face, FaceRule, Nudity, Property, Relationship,
};

fn sequences<T: Copy>(alphabet: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|prefix| {
                alphabet.iter().map(move |&a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn count<T: PartialEq>(frames: &[T], label: T) -> usize {
    frames.iter().filter(|f| **f == label).count()
}

/// Severity order: the clip takes the most severe label any frame carries.
fn oracle_nudity(frames: &[Nudity]) -> Nudity {
    let severity = |n: &Nudity| match n {
        Nudity::NakedOrSemiNaked => 2,
        Nudity::FullyClothed => 1,
        Nudity::NoPerson => 0,
    };
    *frames.iter().max_by_key(|n| severity(n)).unwrap()
}

fn oracle_property(frames: &[Property]) -> Property {
    let severity = |p: &Property| match p {
        Property::Yes => 2,
        Property::No => 1,
        Property::NoPerson => 0,
    };
    *frames.iter().max_by_key(|p| severity(p)).unwrap()
}

fn oracle_face(frames: &[Face], min_yes: usize) -> Face {
    let rules: [(Face, bool); 3] = [
        (Face::Yes, count(frames, Face::Yes) >= min_yes),
        (Face::NoPerson, count(frames, Face::NoPerson) == frames.len()),
        (Face::No, true),
    ];
    rules.iter().find(|(_, applies)| *applies).unwrap().0
}

fn oracle_relationship(frames: &[Relationship]) -> Relationship {
    let i = count(frames, Relationship::Intimate);
    let n = count(frames, Relationship::NonIntimate);
    let o = count(frames, Relationship::OnlyOnePerson);
    let rules = [
        (Relationship::Intimate, i > 0 && i >= n),
        (Relationship::NonIntimate, n > 0),
        (Relationship::OnlyOnePerson, o > 0),
        (Relationship::NoPerson, true),
    ];
    rules.iter().find(|(_, applies)| *applies).unwrap().0
}

fn oracle_activity(frames: &[Activity]) -> Activity {
    let mut distinct: Vec<(usize, usize, Activity)> = Activity::ALL
        .iter()
        .filter_map(|&a| frames.iter().position(|&f| f == a).map(|first| (count(frames, a), first, a)))
        .collect();
    distinct.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    distinct[0].2
}

#[test]
fn nudity_matches_oracle() {
    let all = sequences(Nudity::ALL, 4);
    assert_eq!(all.len(), 3 + 9 + 27 + 81);
    for s in &all {
        assert_eq!(aggregate_nudity(s).unwrap(), oracle_nudity(s), "{s:?}");
    }
}

#[test]
fn face_matches_oracle_under_both_rules() {
    for s in &sequences(Face::ALL, 4) {
        assert_eq!(aggregate_face(s, FaceRule::AtLeastTwo).unwrap(), oracle_face(s, 2), "{s:?}");
        assert_eq!(aggregate_face(s, FaceRule::AtLeastOne).unwrap(), oracle_face(s, 1), "{s:?}");
    }
}

#[test]
fn property_matches_oracle() {
    for s in &sequences(Property::ALL, 4) {
        assert_eq!(aggregate_property(s).unwrap(), oracle_property(s), "{s:?}");
    }
}

#[test]
fn relationship_matches_oracle() {
    let all = sequences(Relationship::ALL, 4);
    assert_eq!(all.len(), 4 + 16 + 64 + 256);
    for s in &all {
        assert_eq!(aggregate_relationship(s).unwrap(), oracle_relationship(s), "{s:?}");
    }
}

#[test]
fn activity_matches_oracle() {
    for s in &sequences(Activity::ALL, 4) {
        assert_eq!(aggregate_activity(s).unwrap(), oracle_activity(s), "{s:?}");
    }
}

#[test]
fn any_semantics_ignore_duplicated_frames() {
    for s in &sequences(Nudity::ALL, 3) {
        for i in 0..s.len() {
            let mut d = s.clone();
            d.insert(i, s[i]);
            assert_eq!(aggregate_nudity(&d).unwrap(), aggregate_nudity(s).unwrap());
        }
    }
    for s in &sequences(Property::ALL, 3) {
        for i in 0..s.len() {
            let mut d = s.clone();
            d.insert(i, s[i]);
            assert_eq!(aggregate_property(&d).unwrap(), aggregate_property(s).unwrap());
        }
    }
}

#[test]
fn relationship_counts_duplicated_frames() {
    // duplication is not neutral: the counts decide intimate vs non-intimate
    let mut flipped = 0;
    for s in &sequences(Relationship::ALL, 3) {
        for i in 0..s.len() {
            let mut d = s.clone();
            d.insert(i, s[i]);
            let got = aggregate_relationship(&d).unwrap();
            assert_eq!(got, oracle_relationship(&d));
            if got != aggregate_relationship(s).unwrap() {
                flipped += 1;
            }
        }
    }
    assert!(flipped > 0);
}
