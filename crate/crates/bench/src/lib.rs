//! Shared fixtures for the benchmarks.

use std::path::PathBuf;

use smooshkit::Arrangement;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// A corpus arrangement by file stem.
pub fn load(name: &str) -> Arrangement {
    smooshkit::corpus::load_arrangement(&corpus_dir().join(format!("{name}.arr")))
        .expect("corpus file")
}
