//! Loading arrangement files from disk.

use std::fs;
use std::path::{Path, PathBuf};

use crate::arrangement::{parse_arrangement, Arrangement};
use crate::error::{Error, Result};

pub fn load_arrangement(path: &Path) -> Result<Arrangement> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?;
    parse_arrangement(&text)
}

/// Every `*.arr` file in `dir`, sorted by file name. A plain file path yields
/// a one-element corpus.
pub fn load_corpus(dir: &Path) -> Result<Vec<(String, Arrangement)>> {
    let name = |p: &Path| {
        p.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    };
    if dir.is_file() {
        return Ok(vec![(name(dir), load_arrangement(dir)?)]);
    }
    let entries =
        fs::read_dir(dir).map_err(|e| Error::MalformedInput(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "arr"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::MalformedInput(format!(
            "no .arr files in {}",
            dir.display()
        )));
    }
    paths
        .iter()
        .map(|p| Ok((name(p), load_arrangement(p)?)))
        .collect()
}
