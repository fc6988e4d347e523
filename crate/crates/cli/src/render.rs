use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use skelaug::io::read_sequence;
use skelaug::render::{render_svg, strip_frames};

#[derive(Debug, clap::Args)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["frame", "strip"])))]
pub struct Args {
    /// Sequence file.
    sequence: PathBuf,
    /// Frame index to draw.
    #[arg(long)]
    frame: Option<usize>,
    /// Draw this many evenly spaced frames side by side.
    #[arg(long)]
    strip: Option<usize>,
    #[arg(short, long)]
    out: PathBuf,
}

pub fn run(args: Args) -> Result<()> {
    let seq = read_sequence(&args.sequence)?;
    let frames = match (args.frame, args.strip) {
        (Some(f), _) => vec![f],
        (None, Some(n)) => strip_frames(&seq, n)?,
        (None, None) => unreachable!("clap requires --frame or --strip"),
    };
    let svg = render_svg(&seq, &frames)?;
    fs::write(&args.out, svg).with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {} frame(s) to {}", frames.len(), args.out.display());
    Ok(())
}
