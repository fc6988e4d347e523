//! Labeled dataset manifests.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skeleton::View;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    #[default]
    Train,
    Test,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    /// Sequence file, relative to the manifest's directory.
    pub path: String,
    pub subject_id: String,
    pub label: String,
    #[serde(default)]
    pub view: View,
    #[serde(default)]
    pub split: Split,
    #[serde(default)]
    pub provenance: Vec<String>,
    /// Entry this one was derived from by augmentation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub label_set: Vec<String>,
    pub rng_seed: u64,
    pub entries: Vec<ManifestEntry>,
}

impl DatasetManifest {
    pub fn validate(&self) -> Result<()> {
        let labels: BTreeSet<&str> = self.label_set.iter().map(String::as_str).collect();
        if labels.len() != self.label_set.len() {
            return Err(Error::InvalidConfig("label_set has duplicates".into()));
        }
        let mut ids = BTreeSet::new();
        for e in &self.entries {
            if e.subject_id.is_empty() {
                return Err(Error::InvalidConfig(format!("entry `{}` has no subject_id", e.id)));
            }
            if !labels.contains(e.label.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "entry `{}` has label `{}` outside the label set",
                    e.id, e.label
                )));
            }
            if !ids.insert(e.id.as_str()) {
                return Err(Error::InvalidConfig(format!("duplicate entry id `{}`", e.id)));
            }
        }
        Ok(())
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.label_set.iter().position(|l| l == label)
    }

    /// Subject ids in order of first appearance.
    pub fn subjects(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        self.entries
            .iter()
            .filter(|e| seen.insert(e.subject_id.as_str()))
            .map(|e| e.subject_id.as_str())
            .collect()
    }
}
