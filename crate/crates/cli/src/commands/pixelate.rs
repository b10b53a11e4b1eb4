use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use privres_core::imaging::{add_gaussian_noise, downsample_box, read_pnm, upscale_nearest, write_pnm};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use walkdir::WalkDir;

use crate::error::CliError;
use crate::output::{sha256_hex, write_atomic, write_config};
use crate::PixelateArgs;

pub const MANIFEST_HEADER: [&str; 3] = ["path", "sha256", "bytes"];

/// One emitted frame. `path` is relative to the output directory and
/// always uses `/` separators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

pub fn manifest_to_csv(entries: &[ManifestEntry]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(MANIFEST_HEADER).map_err(|e| CliError::Internal(e.to_string()))?;
    for e in entries {
        w.serialize(e).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn manifest_from_csv(text: &str) -> Result<Vec<ManifestEntry>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().collect()
}

#[derive(Serialize)]
struct Params<'a> {
    input: &'a Path,
    grid: &'a [u32],
    display: Option<u32>,
    noise_sigma: Option<f64>,
    seed: u64,
}

fn is_frame(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| ["pnm", "pgm", "ppm"].iter().any(|x| e.eq_ignore_ascii_case(x)))
}

fn slash_path(rel: &Path) -> String {
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// Noise seed for one frame, independent of which other frames are present.
fn frame_seed(seed: u64, rel: &str, r: u32) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(r.to_le_bytes());
    h.update(rel.as_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("digest has 32 bytes"))
}

fn check_grid(grid: &[u32]) -> Result<(), CliError> {
    if grid.is_empty() {
        return Err(CliError::Usage("--grid is empty".into()));
    }
    if grid.contains(&0) {
        return Err(CliError::Usage("resolutions must be positive".into()));
    }
    let unique: BTreeSet<_> = grid.iter().collect();
    if unique.len() != grid.len() {
        return Err(CliError::Usage("--grid lists a resolution twice".into()));
    }
    Ok(())
}

fn find_frames(input: &Path) -> Result<Vec<PathBuf>, CliError> {
    if !input.is_dir() {
        return Err(CliError::in_file(input, "not a directory"));
    }
    let mut frames = Vec::new();
    for entry in WalkDir::new(input).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(input).to_path_buf();
            CliError::in_file(path, e)
        })?;
        if entry.file_type().is_file() && is_frame(entry.path()) {
            frames.push(entry.into_path());
        }
    }
    Ok(frames)
}

fn process(
    a: &PixelateArgs,
    out: &Path,
    src: &Path,
    rel: &str,
) -> Result<Vec<ManifestEntry>, CliError> {
    let bytes = fs::read(src).map_err(|e| CliError::io(src, e))?;
    let img = read_pnm(&bytes).map_err(|e| CliError::in_file(src, e))?;
    let mut entries = Vec::with_capacity(a.grid.len());
    for &r in &a.grid {
        let mut frame = downsample_box(&img, r).map_err(|e| CliError::in_file(src, e))?;
        if let Some(side) = a.display {
            frame = upscale_nearest(&frame, side, side).map_err(|e| CliError::in_file(src, e))?;
        }
        if let Some(sigma) = a.noise_sigma {
            frame = add_gaussian_noise(&frame, sigma, frame_seed(a.seed, rel, r))?;
        }
        let data = write_pnm(&frame);
        let rel_out = format!("{r}/{rel}");
        write_atomic(&out.join(&rel_out), &data)?;
        entries.push(ManifestEntry {
            path: rel_out,
            sha256: sha256_hex(&data),
            bytes: data.len() as u64,
        });
    }
    Ok(entries)
}

pub fn run(a: &PixelateArgs, out: &Path) -> Result<Vec<String>, CliError> {
    check_grid(&a.grid)?;
    if a.display == Some(0) {
        return Err(CliError::Usage("--display must be positive".into()));
    }
    if let Some(sigma) = a.noise_sigma {
        // surface a bad sigma once instead of once per frame
        let probe = privres_core::imaging::RasterImage::filled(1, 1, 1, 0)?;
        add_gaussian_noise(&probe, sigma, 0)?;
    }
    let frames = find_frames(&a.input)?;
    if frames.is_empty() {
        return Err(CliError::EmptyInput(a.input.clone()));
    }

    let mut manifest = Vec::new();
    let mut failures = 0;
    for src in &frames {
        let rel = slash_path(src.strip_prefix(&a.input).unwrap_or(src));
        match process(a, out, src, &rel) {
            Ok(entries) => manifest.extend(entries),
            Err(e) => {
                eprintln!("error: {e}");
                failures += 1;
            }
        }
    }
    manifest.sort_by(|x, y| x.path.cmp(&y.path));
    let manifest_path = out.join("manifest.csv");
    write_atomic(&manifest_path, manifest_to_csv(&manifest)?.as_bytes())?;
    let config = write_config(
        out,
        "pixelate",
        &Params {
            input: &a.input,
            grid: &a.grid,
            display: a.display,
            noise_sigma: a.noise_sigma,
            seed: a.seed,
        },
    )?;
    if failures > 0 {
        return Err(CliError::PartialFailure(failures));
    }
    Ok(vec![
        format!(
            "pixelated {} frame(s) at {} resolution(s) into {}",
            frames.len(),
            a.grid.len(),
            out.display()
        ),
        format!("wrote {}", manifest_path.display()),
        format!("wrote {}", config.display()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_round_trip() {
        let entries = vec![ManifestEntry {
            path: "15/a,b.pgm".into(),
            sha256: "00".into(),
            bytes: 9,
        }];
        let text = manifest_to_csv(&entries).unwrap();
        assert!(text.starts_with("path,sha256,bytes\n"));
        assert_eq!(manifest_from_csv(&text).unwrap(), entries);
        assert_eq!(manifest_to_csv(&[]).unwrap(), "path,sha256,bytes\n");
    }

    #[test]
    fn frame_seeds_differ_by_resolution_and_path() {
        assert_ne!(frame_seed(1, "a.pgm", 15), frame_seed(1, "a.pgm", 20));
        assert_ne!(frame_seed(1, "a.pgm", 15), frame_seed(1, "b.pgm", 15));
        assert_eq!(frame_seed(1, "a.pgm", 15), frame_seed(1, "a.pgm", 15));
    }

    #[test]
    fn grid_validation() {
        assert!(check_grid(&[15, 240]).is_ok());
        assert!(check_grid(&[]).is_err());
        assert!(check_grid(&[15, 15]).is_err());
        assert!(check_grid(&[0]).is_err());
    }
}
