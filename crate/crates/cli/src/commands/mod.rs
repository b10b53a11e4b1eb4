//! One module per subcommand. Each `run` writes its outputs plus
//! `config.json` under the output directory and returns summary lines.

pub mod aggregate;
pub mod eval;
pub mod fixtures;
pub mod pixelate;
pub mod survey;
pub mod tradeoff;

use std::path::Path;

use crate::output::{read_text, Emitted};

fn is_json(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Reads `path` and parses it with `parse`, naming the file on failure.
fn load<T, E: std::fmt::Display>(
    path: &Path,
    parse: impl FnOnce(&str) -> Result<T, E>,
) -> Result<T, crate::CliError> {
    let text = read_text(path)?;
    parse(&text).map_err(|e| crate::CliError::in_file(path, e))
}

fn wrote(emitted: &Emitted) -> Vec<String> {
    emitted
        .files
        .iter()
        .map(|p| format!("wrote {}", p.display()))
        .collect()
}
