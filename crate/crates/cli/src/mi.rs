use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use skelaug::augment::AUGMENT_PREFIX;
use skelaug::mi::{classify_methods, mean, sequence_mi, MIResult, QuantizationConfig, DEFAULT_BINS};
use skelaug::SkeletonSequence;

use crate::common::{load_dataset, usage};

pub const REPORT_TEXT: &str = "mi_report.txt";
pub const REPORT_CSV: &str = "mi_report.csv";

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Manifest holding the raw entries.
    #[arg(long)]
    raw: PathBuf,
    /// Augmented manifests; entries are paired with their raw source and
    /// grouped by augmentation tag.
    #[arg(long, required = true)]
    aug: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    /// Directory for the text and CSV reports.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Averages of every [`MIResult`] column for one method.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSummary {
    pub pairs: usize,
    pub mi: f64,
    pub entropy_raw: f64,
    pub entropy_aug: f64,
    pub joint_entropy: f64,
}

fn summarize(results: &[MIResult]) -> MethodSummary {
    let col = |f: fn(&MIResult) -> f64| mean(&results.iter().map(f).collect::<Vec<_>>());
    MethodSummary {
        pairs: results.len(),
        mi: col(|r| r.mi),
        entropy_raw: col(|r| r.entropy_a),
        entropy_aug: col(|r| r.entropy_b),
        joint_entropy: col(|r| r.joint_entropy),
    }
}

/// `raw+<tag>` from the last augmentation step of a provenance chain.
fn method_name(provenance: &[String]) -> Option<&str> {
    provenance.iter().rev().find_map(|p| p.strip_prefix(AUGMENT_PREFIX))
}

pub fn run(args: Args) -> Result<()> {
    let cfg = QuantizationConfig { bins: args.bins };
    cfg.validate().map_err(|e| usage(e.to_string()))?;

    let (raw_manifest, raw_seqs) = load_dataset(&args.raw)?;
    let raw_by_id: HashMap<&str, &SkeletonSequence> = raw_manifest
        .entries
        .iter()
        .map(|e| e.id.as_str())
        .zip(&raw_seqs)
        .collect();

    let mut grouped: BTreeMap<String, Vec<MIResult>> = BTreeMap::new();
    for path in &args.aug {
        let (manifest, seqs) = load_dataset(path)?;
        for (entry, seq) in manifest.entries.iter().zip(&seqs) {
            let Some(source) = &entry.source_id else { continue };
            let Some(method) = method_name(&entry.provenance) else { continue };
            let raw = raw_by_id.get(source.as_str()).with_context(|| {
                format!("{}: source `{source}` of `{}` is not in {}", path.display(), entry.id, args.raw.display())
            })?;
            let r = sequence_mi(raw, seq, &cfg).with_context(|| format!("entry `{}`", entry.id))?;
            grouped.entry(method.to_string()).or_default().push(r);
        }
    }
    if grouped.is_empty() {
        bail!("no augmented entries with a raw source were found");
    }

    let summaries: BTreeMap<String, MethodSummary> =
        grouped.iter().map(|(k, v)| (k.clone(), summarize(v))).collect();
    let per_method = summaries.iter().map(|(k, s)| (k.clone(), s.mi)).collect();
    let report = classify_methods(&per_method)?;

    let text = report.to_text();
    let mut csv = String::from("method,mi,entropy_raw,entropy_aug,joint_entropy,pairs,class\n");
    for m in &report.ranking {
        let s = &summaries[m];
        let _ = writeln!(
            csv,
            "{m},{},{},{},{},{},{}",
            s.mi, s.entropy_raw, s.entropy_aug, s.joint_entropy, s.pairs, report.taxonomy[m]
        );
    }
    print!("{text}");
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, body) in [(REPORT_TEXT, &text), (REPORT_CSV, &csv)] {
            let p = dir.join(name);
            fs::write(&p, body).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    Ok(())
}
