use std::path::PathBuf;

use anyhow::Result;
use skelaug::io::export_bundle;

use crate::common::load_dataset;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Manifest of equally shaped windows.
    manifest: PathBuf,
    /// Bundle directory.
    out: PathBuf,
}

pub fn run(args: Args) -> Result<()> {
    let (manifest, windows) = load_dataset(&args.manifest)?;
    let s = export_bundle(&manifest, &windows, &args.out)?;
    println!(
        "exported {} windows of {} x {} from {} subjects to {}",
        s.count,
        s.window_frames,
        s.features,
        s.subjects,
        args.out.display()
    );
    Ok(())
}
