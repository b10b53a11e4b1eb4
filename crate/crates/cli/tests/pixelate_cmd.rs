mod common;

use std::fs;

use common::{pgm, privres, read, s, write};
use privres_cli::commands::pixelate::manifest_from_csv;
use privres_cli::output::sha256_hex;
use privres_core::imaging::read_pnm;

fn subdirs(out: &std::path::Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(out)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().unwrap().is_dir())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

#[test]
fn one_frame_two_resolutions() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("frames");
    write(&input, "clip/0.pgm", &pgm(240, 240, |x, y| ((x + y) % 256) as u8));
    let out = dir.path().join("out");
    let run = privres(&out, &["pixelate", "--input", s(&input), "--grid", "15,240"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(subdirs(&out), vec!["15", "240"]);

    let small = read_pnm(&fs::read(out.join("15/clip/0.pgm")).unwrap()).unwrap();
    assert_eq!((small.width(), small.height()), (15, 15));
    // a full-size target is the identity
    assert_eq!(fs::read(out.join("240/clip/0.pgm")).unwrap(), fs::read(input.join("clip/0.pgm")).unwrap());

    let manifest = manifest_from_csv(&read(out.join("manifest.csv"))).unwrap();
    assert_eq!(manifest.len(), 2);
    for entry in &manifest {
        let bytes = fs::read(out.join(&entry.path)).unwrap();
        assert_eq!(entry.sha256, sha256_hex(&bytes));
        assert_eq!(entry.bytes, bytes.len() as u64);
    }
}

#[test]
fn default_grid_is_the_seven_sampled_resolutions() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("frames");
    write(&input, "a.pgm", &pgm(64, 48, |x, _| (x * 4) as u8));
    let out = dir.path().join("out");
    let run = privres(&out, &["pixelate", "--input", s(&input)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(subdirs(&out), vec!["100", "15", "160", "20", "240", "30", "50"]);
    for r in [15u32, 20, 30, 50, 100, 160, 240] {
        let img = read_pnm(&fs::read(out.join(format!("{r}/a.pgm"))).unwrap()).unwrap();
        assert_eq!((img.width(), img.height()), (r, r));
    }
}

#[test]
fn empty_input_directory() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("frames");
    fs::create_dir_all(&input).unwrap();
    write(&input, "notes.txt", b"not a frame");
    let run = privres(&dir.path().join("out"), &["pixelate", "--input", s(&input)]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("no input frames found"), "{}", run.stderr);
}

#[test]
fn bad_files_are_reported_and_fail_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("frames");
    write(&input, "good.pgm", &pgm(8, 8, |x, y| (x * y) as u8));
    write(&input, "bad.pgm", b"P5\n8 8\n255\nshort");
    let out = dir.path().join("out");
    let run = privres(&out, &["pixelate", "--input", s(&input), "--grid", "4"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("bad.pgm"), "{}", run.stderr);
    assert!(run.stderr.contains("1 file(s) failed"), "{}", run.stderr);
    assert!(out.join("4/good.pgm").exists());
    let manifest = manifest_from_csv(&read(out.join("manifest.csv"))).unwrap();
    assert_eq!(manifest.len(), 1);
}

#[test]
fn display_size_and_seeded_noise() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("frames");
    write(&input, "a.pgm", &pgm(32, 32, |_, _| 128));
    let args = |out: &std::path::Path, seed: &str| {
        privres(
            out,
            &["pixelate", "--input", s(&input), "--grid", "8", "--display", "16", "--noise-sigma", "10", "--seed", seed],
        )
    };
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    assert_eq!(args(&a, "1").code, 0);
    assert_eq!(args(&b, "1").code, 0);
    assert_eq!(args(&c, "2").code, 0);
    let img = read_pnm(&fs::read(a.join("8/a.pgm")).unwrap()).unwrap();
    assert_eq!((img.width(), img.height()), (16, 16));
    assert_eq!(read(a.join("manifest.csv")), read(b.join("manifest.csv")));
    assert_ne!(read(a.join("manifest.csv")), read(c.join("manifest.csv")));

    let run = privres(&a, &["pixelate", "--input", s(&input), "--noise-sigma", "-1"]);
    assert_eq!(run.code, 2);
    let run = privres(&a, &["pixelate", "--input", s(&input), "--grid", "8,8"]);
    assert_eq!(run.code, 2);
}

#[test]
fn color_frames_keep_three_channels() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("frames");
    let mut ppm = b"P6\n# camera 1\n4 4\n255\n".to_vec();
    for i in 0..16u8 {
        ppm.extend([i * 10, 255 - i, 7]);
    }
    write(&input, "c.ppm", &ppm);
    let out = dir.path().join("out");
    assert_eq!(privres(&out, &["pixelate", "--input", s(&input), "--grid", "2"]).code, 0);
    let img = read_pnm(&fs::read(out.join("2/c.ppm")).unwrap()).unwrap();
    assert_eq!((img.width(), img.height(), img.channels()), (2, 2, 3));
    assert_eq!(img.get(0, 0, 2), 7);
}
