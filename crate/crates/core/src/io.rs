//! On-disk formats.
//!
//! Sequence file (`skelaug-v1`): a header line `skelaug-v1,<schema>,<frame_rate>`
//! followed by one CSV row per frame holding the timestamp and then the
//! joint-major `x,y,z` triples. Numbers use Rust's shortest round-trip
//! decimal form, so a write/read cycle is exact.
//!
//! Tensor bundle (a directory):
//! - `windows.bin`: three little-endian `u32` (count, window_frames,
//!   joints·3) followed by `count·window_frames·joints·3` little-endian `f32`
//! - `labels.txt`: one class index per line
//! - `groups.txt`: one subject ordinal per line, by first appearance
//! - `meta.txt`: schema, shape, class names and per-window provenance

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::dataset::DatasetManifest;
use crate::error::{Error, Result};
use crate::skeleton::{Frame, Schema, SkeletonSequence};

pub const SEQUENCE_MAGIC: &str = "skelaug-v1";

pub fn format_sequence(seq: &SkeletonSequence) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{SEQUENCE_MAGIC},{},{}", seq.schema, seq.frame_rate);
    for frame in &seq.frames {
        let _ = write!(out, "{}", frame.timestamp);
        for p in &frame.positions {
            let _ = write!(out, ",{},{},{}", p[0], p[1], p[2]);
        }
        out.push('\n');
    }
    out
}

fn parse_finite(token: &str, path: &Path, row: usize, column: usize) -> Result<f64> {
    match token.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::BadToken {
            path: path.to_path_buf(),
            row,
            column,
            token: token.to_string(),
        }),
    }
}

/// Parses a sequence file body; `path` only labels errors. Rows are counted
/// from 1 with the header as row 1.
pub fn parse_sequence(text: &str, path: &Path) -> Result<SkeletonSequence> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::MalformedHeader {
        path: path.to_path_buf(),
        reason: "file is empty".into(),
    })?;
    let parts: Vec<&str> = header.split(',').collect();
    let malformed = |reason: String| Error::MalformedHeader {
        path: path.to_path_buf(),
        reason,
    };
    if parts.len() != 3 || parts[0] != SEQUENCE_MAGIC {
        return Err(malformed(format!("expected `{SEQUENCE_MAGIC},<schema>,<frame_rate>`, got `{header}`")));
    }
    let schema: Schema = parts[1]
        .parse()
        .map_err(|_| malformed(format!("unknown schema `{}`", parts[1])))?;
    let frame_rate = match parts[2].parse::<f64>() {
        Ok(r) if r.is_finite() && r > 0.0 => r,
        _ => return Err(malformed(format!("bad frame rate `{}`", parts[2]))),
    };

    let joints = schema.joint_count();
    let expected = 1 + 3 * joints;
    let mut frames = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = i + 2;
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split(',').collect();
        if tokens.len() != expected {
            return Err(Error::ColumnCount {
                path: path.to_path_buf(),
                row,
                expected,
                found: tokens.len(),
            });
        }
        let timestamp = parse_finite(tokens[0], path, row, 1)?;
        let mut positions = Vec::with_capacity(joints);
        for j in 0..joints {
            let mut p = [0.0; 3];
            for (a, v) in p.iter_mut().enumerate() {
                let col = 1 + 3 * j + a;
                *v = parse_finite(tokens[col], path, row, col + 1)?;
            }
            positions.push(p);
        }
        frames.push(Frame { timestamp, positions });
    }
    Ok(SkeletonSequence::new(schema, frame_rate, frames))
}

fn ensure_parent(path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
    }
    Ok(())
}

pub fn write_sequence(path: &Path, seq: &SkeletonSequence) -> Result<()> {
    ensure_parent(path)?;
    fs::write(path, format_sequence(seq)).map_err(|e| Error::io(path, e))
}

pub fn read_sequence(path: &Path) -> Result<SkeletonSequence> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_sequence(&text, path)
}

pub fn write_manifest(path: &Path, manifest: &DatasetManifest) -> Result<()> {
    ensure_parent(path)?;
    let mut text = serde_json::to_string_pretty(manifest).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_manifest(path: &Path) -> Result<DatasetManifest> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let manifest: DatasetManifest = serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    manifest.validate()?;
    Ok(manifest)
}

/// Resolves an entry path relative to the manifest file.
pub fn entry_path(manifest_path: &Path, entry_path: &str) -> PathBuf {
    manifest_path
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .join(entry_path)
}

/// Reads every sequence a manifest references, in entry order.
pub fn load_sequences(manifest_path: &Path, manifest: &DatasetManifest) -> Result<Vec<SkeletonSequence>> {
    manifest
        .entries
        .iter()
        .map(|e| {
            let mut seq = read_sequence(&entry_path(manifest_path, &e.path))?;
            seq.provenance = e.provenance.clone();
            Ok(seq)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSummary {
    pub count: usize,
    pub window_frames: usize,
    pub features: usize,
    pub subjects: usize,
}

pub const BUNDLE_WINDOWS: &str = "windows.bin";
pub const BUNDLE_LABELS: &str = "labels.txt";
pub const BUNDLE_GROUPS: &str = "groups.txt";
pub const BUNDLE_META: &str = "meta.txt";

/// Writes a tensor bundle for `windows`, aligned with `manifest.entries`.
/// Coordinates are narrowed to `f32` here.
pub fn export_bundle(manifest: &DatasetManifest, windows: &[SkeletonSequence], dir: &Path) -> Result<BundleSummary> {
    if windows.len() != manifest.entries.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} windows for {} manifest entries",
            windows.len(),
            manifest.entries.len()
        )));
    }
    let first = windows.first().ok_or(Error::Empty("bundle with no windows"))?;
    let (schema, frames) = (first.schema, first.len());
    for (w, e) in windows.iter().zip(&manifest.entries) {
        if w.schema != schema || w.len() != frames {
            return Err(Error::ShapeMismatch(format!(
                "window `{}` is {} x {} frames, expected {} x {}",
                e.id,
                w.schema,
                w.len(),
                schema,
                frames
            )));
        }
    }
    let features = schema.joint_count() * 3;

    let subjects = manifest.subjects();
    let ordinal = |s: &str| subjects.iter().position(|x| *x == s).unwrap_or(0);

    let mut bin = Vec::with_capacity(12 + windows.len() * frames * features * 4);
    for v in [windows.len(), frames, features] {
        let v = u32::try_from(v).map_err(|_| Error::ShapeMismatch("bundle dimension exceeds u32".into()))?;
        bin.extend_from_slice(&v.to_le_bytes());
    }
    for w in windows {
        for v in w.flatten() {
            bin.extend_from_slice(&(v as f32).to_le_bytes());
        }
    }

    let mut labels = String::new();
    let mut groups = String::new();
    let mut meta = String::new();
    let _ = writeln!(meta, "schema {schema}");
    let _ = writeln!(meta, "count {}", windows.len());
    let _ = writeln!(meta, "window_frames {frames}");
    let _ = writeln!(meta, "features {features}");
    let _ = writeln!(meta, "classes {}", manifest.label_set.join(","));
    let _ = writeln!(meta, "subjects {}", subjects.join(","));
    for (i, e) in manifest.entries.iter().enumerate() {
        let label = manifest.label_index(&e.label).ok_or_else(|| {
            Error::InvalidConfig(format!("entry `{}` label `{}` not in label set", e.id, e.label))
        })?;
        let _ = writeln!(labels, "{label}");
        let _ = writeln!(groups, "{}", ordinal(&e.subject_id));
        let _ = writeln!(meta, "window {i} {} {}", e.id, e.provenance.join(" > "));
    }

    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (name, bytes) in [
        (BUNDLE_WINDOWS, bin),
        (BUNDLE_LABELS, labels.into_bytes()),
        (BUNDLE_GROUPS, groups.into_bytes()),
        (BUNDLE_META, meta.into_bytes()),
    ] {
        let p = dir.join(name);
        fs::write(&p, bytes).map_err(|e| Error::io(p, e))?;
    }
    Ok(BundleSummary {
        count: windows.len(),
        window_frames: frames,
        features,
        subjects: subjects.len(),
    })
}
