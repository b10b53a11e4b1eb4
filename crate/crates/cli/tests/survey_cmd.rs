mod common;

use std::collections::BTreeSet;
use std::fs;

use common::{privres, read, s, write};
use privres_cli::commands::survey::{wilcoxon_from_csv, AttentionReport, SelectionFile};
use privres_core::fixtures::{table1, table1_selection};
use privres_core::model::io::weights_from_json;
use privres_core::model::FeatureCatalog;
use privres_core::survey::io::{responses_to_csv, responses_to_json};
use privres_core::survey::{spoil_attention, synthesize_responses, Condition, ImportanceTable};

fn four() -> BTreeSet<String> {
    ["nudity", "identifiable_face", "valuable_property", "relationship"]
        .map(String::from)
        .into()
}

#[test]
fn bundled_table_selects_four_features() {
    let dir = tempfile::tempdir().unwrap();
    let run = privres(dir.path(), &["survey", "--bundled-table"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let selection: SelectionFile = serde_json::from_str(&read(dir.path().join("selection.json"))).unwrap();
    assert_eq!(selection.selected, four());
    assert_eq!(selection.threshold, 50.0);
    assert_eq!(selection.condition, Condition::LowResolution);

    let weights = weights_from_json(&read(dir.path().join("weights.json"))).unwrap();
    let sum: f64 = weights.entries().values().sum();
    assert!((sum - 1.0).abs() < 1e-9);
    let table = ImportanceTable::from_csv(&read(dir.path().join("summary.csv"))).unwrap();
    assert_eq!(table, table1());
}

#[test]
fn synthetic_responses_reproduce_selection() {
    let dir = tempfile::tempdir().unwrap();
    let run = privres(dir.path(), &["survey", "--synthetic", "115", "--seed", "11"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let selection: SelectionFile = serde_json::from_str(&read(dir.path().join("selection.json"))).unwrap();
    assert_eq!(selection.selected, table1_selection());

    let rows = wilcoxon_from_csv(&read(dir.path().join("wilcoxon.csv"))).unwrap();
    assert_eq!(rows.len(), FeatureCatalog::standard().len());
    assert!(rows.iter().all(|r| r.n_pairs == 115));
    assert!(rows.iter().all(|r| r.p_value.is_some_and(|p| (0.0..=1.0).contains(&p))));

    let report: AttentionReport = serde_json::from_str(&read(dir.path().join("attention.json"))).unwrap();
    assert_eq!((report.total, report.valid, report.excluded), (230, 230, 0));
    assert_eq!(report.friedman.len(), 2);
}

#[test]
fn attention_failures_are_excluded_and_counted() {
    let dir = tempfile::tempdir().unwrap();
    let mut responses = synthesize_responses(&table1(), 40, 3);
    spoil_attention(&mut responses, 6);
    let (ratings, attention) = responses_to_csv(&responses);
    let ratings = write(dir.path(), "ratings.csv", ratings.as_bytes());
    let attention = write(dir.path(), "attention.csv", attention.as_bytes());
    let out = dir.path().join("out");
    let run = privres(&out, &["survey", "--ratings", s(&ratings), "--attention", s(&attention)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("74 of 80 response(s) passed attention checks; 6 excluded"), "{}", run.stdout);
    let report: AttentionReport = serde_json::from_str(&read(out.join("attention.json"))).unwrap();
    assert_eq!(report.excluded, 6);
    assert!(!report.excluded_respondents.is_empty());

    // the same responses as JSON give identical outputs
    let json = write(dir.path(), "responses.json", responses_to_json(&responses).as_bytes());
    let out2 = dir.path().join("out2");
    assert_eq!(privres(&out2, &["survey", "--responses", s(&json)]).code, 0);
    for name in ["summary.csv", "selection.json", "wilcoxon.csv"] {
        assert_eq!(read(out.join(name)), read(out2.join(name)), "{name}");
    }
    // only the provenance note names the source format
    let w1 = weights_from_json(&read(out.join("weights.json"))).unwrap();
    let w2 = weights_from_json(&read(out2.join("weights.json"))).unwrap();
    assert_eq!(w1.entries(), w2.entries());

    // a looser tolerance keeps everyone
    let out3 = dir.path().join("out3");
    let run = privres(&out3, &["survey", "--responses", s(&json), "--tolerance", "100"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("0 excluded"));
}

#[test]
fn all_zero_ratings_give_empty_selection() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("respondent_id,condition,feature_id,score\n");
    for id in ["a", "b", "c"] {
        for condition in ["high", "low"] {
            for f in FeatureCatalog::standard().ids() {
                text.push_str(&format!("{id},{condition},{f},0\n"));
            }
        }
    }
    let ratings = write(dir.path(), "ratings.csv", text.as_bytes());
    let out = dir.path().join("out");
    let run = privres(&out, &["survey", "--ratings", s(&ratings)]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("no features selected"), "{}", run.stderr);
    let selection: SelectionFile = serde_json::from_str(&read(out.join("selection.json"))).unwrap();
    assert!(selection.selected.is_empty());
    assert!(!out.join("weights.json").exists());
    assert!(out.join("config.json").exists());
    // every pair ties, so no test is reported
    let rows = wilcoxon_from_csv(&read(out.join("wilcoxon.csv"))).unwrap();
    assert!(rows.iter().all(|r| r.p_value.is_none() && r.n_pairs == 3));
}

#[test]
fn ratings_diagnostics_point_at_the_right_file() {
    let dir = tempfile::tempdir().unwrap();
    let responses = synthesize_responses(&table1(), 3, 1);
    let (ratings, attention) = responses_to_csv(&responses);

    let bad_ratings = ratings.replacen(",nudity,", ",nudityy,", 1);
    let r = write(dir.path(), "bad_ratings.csv", bad_ratings.as_bytes());
    let run = privres(dir.path(), &["survey", "--ratings", s(&r)]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("bad_ratings.csv"), "{}", run.stderr);
    assert!(run.stderr.contains("field `feature_id`"), "{}", run.stderr);

    let r = write(dir.path(), "ratings.csv", ratings.as_bytes());
    let mut lines: Vec<&str> = attention.lines().collect();
    let broken = lines[2].rsplit_once(',').unwrap().0.to_string() + ",x";
    lines[2] = &broken;
    let a = write(dir.path(), "bad_attention.csv", (lines.join("\n") + "\n").as_bytes());
    let run = privres(dir.path(), &["survey", "--ratings", s(&r), "--attention", s(&a)]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("bad_attention.csv"), "{}", run.stderr);
    assert!(run.stderr.contains("line 3, field `given`"), "{}", run.stderr);
}

#[test]
fn synthetic_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    assert_eq!(privres(&a, &["survey", "--synthetic", "20", "--seed", "5"]).code, 0);
    assert_eq!(privres(&b, &["survey", "--synthetic", "20", "--seed", "5"]).code, 0);
    assert_eq!(privres(&c, &["survey", "--synthetic", "20", "--seed", "6"]).code, 0);
    for name in ["summary.csv", "wilcoxon.csv", "attention.json", "selection.json", "weights.json"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    assert_ne!(read(a.join("wilcoxon.csv")), read(c.join("wilcoxon.csv")));
}

#[test]
fn threshold_is_range_checked() {
    let dir = tempfile::tempdir().unwrap();
    let run = privres(dir.path(), &["survey", "--bundled-table", "--threshold", "101"]);
    assert_eq!(run.code, 2);
    let run = privres(dir.path(), &["survey", "--bundled-table", "--threshold", "60"]);
    assert_eq!(run.code, 0);
    let selection: SelectionFile = serde_json::from_str(&read(dir.path().join("selection.json"))).unwrap();
    assert_eq!(selection.selected, BTreeSet::from(["nudity".to_string()]));
}
