use std::path::PathBuf;

use anyhow::Result;
use rand::seq::SliceRandom;
use skelaug::dataset::Split;
use skelaug::rng::substream;

use crate::common::{load_dataset, usage, write_dataset};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Train:test subject ratio, e.g. 4 for 4:1.
    #[arg(long, default_value_t = 4)]
    ratio: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Test subjects for a `ratio`:1 split: the first round(n / (ratio + 1))
/// subjects of a seeded shuffle, at least one when there are two or more.
pub fn test_subjects<'a>(subjects: &[&'a str], ratio: u32, seed: u64) -> Vec<&'a str> {
    let mut order = subjects.to_vec();
    order.shuffle(&mut substream(seed, "split", 0));
    let n = subjects.len();
    let mut k = ((n as f64) / f64::from(ratio + 1)).round() as usize;
    if n >= 2 {
        k = k.clamp(1, n - 1);
    }
    order.truncate(k);
    order
}

pub fn run(args: Args) -> Result<()> {
    if args.ratio == 0 {
        return Err(usage("--ratio must be at least 1"));
    }
    let (mut manifest, sequences) = load_dataset(&args.input)?;
    let subjects = manifest.subjects();
    let test: Vec<String> = test_subjects(&subjects, args.ratio, args.seed)
        .into_iter()
        .map(String::from)
        .collect();
    for e in &mut manifest.entries {
        e.split = if test.contains(&e.subject_id) {
            Split::Test
        } else {
            Split::Train
        };
    }
    let n_test = manifest.entries.iter().filter(|e| e.split == Split::Test).count();
    let total = manifest.entries.len();
    let path = write_dataset(&args.out, manifest, &sequences)?;
    println!(
        "{} train / {n_test} test entries ({} test subjects) in {}",
        total - n_test,
        test.len(),
        path.display()
    );
    Ok(())
}
