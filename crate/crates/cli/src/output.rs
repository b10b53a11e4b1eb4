//! Atomic output files and per-run config records.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const GENERATOR: &str = concat!("privres ", env!("CARGO_PKG_VERSION"));

/// Writes into a temporary file beside `path`, then renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Internal(e.to_string()))
}

#[derive(Serialize)]
struct RunConfig<'a, P: Serialize> {
    format_version: u32,
    generator: &'a str,
    command: &'a str,
    parameters: &'a P,
}

/// Records the fully resolved parameters of a run as `config.json`.
pub fn write_config<P: Serialize>(out: &Path, command: &str, parameters: &P) -> Result<PathBuf, CliError> {
    let config = RunConfig {
        format_version: privres_core::FORMAT_VERSION,
        generator: GENERATOR,
        command,
        parameters,
    };
    let path = out.join("config.json");
    write_atomic(&path, to_json(&config)?.as_bytes())?;
    Ok(path)
}

/// Collects emitted files for the run summary printed on stdout.
#[derive(Debug, Default)]
pub struct Emitted {
    pub files: Vec<PathBuf>,
}

impl Emitted {
    pub fn write(&mut self, path: PathBuf, contents: &[u8]) -> Result<(), CliError> {
        write_atomic(&path, contents)?;
        self.files.push(path);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("nested/a.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(fs::read(&p).unwrap(), b"two");
        let names: Vec<_> = fs::read_dir(p.parent().unwrap()).unwrap().collect();
        assert_eq!(names.len(), 1);
    }

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
