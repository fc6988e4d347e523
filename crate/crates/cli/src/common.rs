use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use skelaug::dataset::DatasetManifest;
use skelaug::io::{load_sequences, read_manifest, write_manifest, write_sequence};
use skelaug::SkeletonSequence;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const SEQUENCE_DIR: &str = "sequences";

/// A flag combination that cannot be acted on; exits with the usage code.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub fn load_dataset(manifest_path: &Path) -> Result<(DatasetManifest, Vec<SkeletonSequence>)> {
    let manifest = read_manifest(manifest_path)?;
    let sequences = load_sequences(manifest_path, &manifest)?;
    Ok((manifest, sequences))
}

pub fn sequence_path(id: &str) -> String {
    format!("{SEQUENCE_DIR}/{id}.csv")
}

/// Writes `manifest.json` plus one sequence file per entry under `dir`.
/// Entry paths are rewritten to `sequences/<id>.csv`.
pub fn write_dataset(dir: &Path, mut manifest: DatasetManifest, sequences: &[SkeletonSequence]) -> Result<PathBuf> {
    fs::create_dir_all(dir.join(SEQUENCE_DIR)).with_context(|| format!("creating {}", dir.display()))?;
    for (entry, seq) in manifest.entries.iter_mut().zip(sequences) {
        entry.path = sequence_path(&entry.id);
        entry.provenance = seq.provenance.clone();
        write_sequence(&dir.join(&entry.path), seq)?;
    }
    let path = dir.join(MANIFEST_FILE);
    write_manifest(&path, &manifest)?;
    Ok(path)
}
