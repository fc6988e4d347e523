use std::path::PathBuf;

use anyhow::Result;
use skelaug::dataset::{DatasetManifest, ManifestEntry};
use skelaug::preprocess::{preprocess_sequence, PreprocessConfig};
use skelaug::skeleton::{deformed_frames, View, DEFORMATION_TOLERANCE};

use crate::common::{load_dataset, usage, write_dataset};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Input manifest.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Camera tilt, radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    /// Keep all 25 joints.
    #[arg(long)]
    no_simplify: bool,
    /// Scale each run by its first-frame spine length.
    #[arg(long)]
    normalize_spine: bool,
    /// Window length, frames.
    #[arg(long, default_value_t = 100)]
    window: usize,
    /// Window stride, frames.
    #[arg(long, default_value_t = 50)]
    stride: usize,
}

pub fn run(args: Args) -> Result<()> {
    let cfg = PreprocessConfig {
        camera_tilt_theta: args.theta,
        simplify: !args.no_simplify,
        normalize_spine: args.normalize_spine,
        window_frames: args.window,
        window_stride: args.stride,
        ..PreprocessConfig::default()
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;

    let (manifest, sequences) = load_dataset(&args.input)?;
    let mut entries = Vec::new();
    let mut windows = Vec::new();
    let mut dropped = 0usize;
    for (entry, seq) in manifest.entries.iter().zip(&sequences) {
        for (k, w) in preprocess_sequence(seq, &cfg)?.into_iter().enumerate() {
            let bad = deformed_frames(&w, DEFORMATION_TOLERANCE);
            if !bad.is_empty() {
                eprintln!("dropping {}-w{k:03}: {} deformed frames", entry.id, bad.len());
                dropped += 1;
                continue;
            }
            entries.push(ManifestEntry {
                id: format!("{}-w{k:03}", entry.id),
                path: String::new(),
                subject_id: entry.subject_id.clone(),
                label: entry.label.clone(),
                view: View::Front,
                split: entry.split,
                provenance: w.provenance.clone(),
                source_id: None,
            });
            windows.push(w);
        }
    }
    let out = DatasetManifest {
        label_set: manifest.label_set.clone(),
        rng_seed: manifest.rng_seed,
        entries,
    };
    let path = write_dataset(&args.out, out, &windows)?;
    println!(
        "wrote {} windows from {} sequences to {} ({dropped} dropped)",
        windows.len(),
        sequences.len(),
        path.display()
    );
    Ok(())
}
