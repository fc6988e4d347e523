use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::Deserialize;
use skelaug::synth::{generate_dataset, ClassProfile, DEFAULT_SENSOR_NOISE};

use crate::common::write_dataset;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// TOML file overriding the default two-class configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Master seed; overrides the config's seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub seed: u64,
    pub subjects_per_class: usize,
    pub duration_s: f64,
    pub frame_rate: f64,
    pub sensor_noise: f64,
    pub profiles: Vec<ClassProfile>,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            subjects_per_class: 10,
            duration_s: 5.0,
            frame_rate: 30.0,
            sensor_noise: DEFAULT_SENSOR_NOISE,
            profiles: ClassProfile::defaults(),
        }
    }
}

pub fn run(args: Args) -> Result<()> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
            toml::from_str::<SynthConfig>(&text).with_context(|| format!("parsing config {}", path.display()))?
        }
        None => SynthConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let data = generate_dataset(&cfg.profiles, cfg.subjects_per_class, cfg.seed, cfg.duration_s, cfg.frame_rate)?
        .with_sensor_noise(cfg.sensor_noise, cfg.seed)?;
    let sequences: Vec<_> = data.sequences.into_iter().map(|s| s.sequence).collect();
    let path = write_dataset(&args.out, data.manifest, &sequences)?;
    println!("wrote {} subjects to {}", sequences.len(), path.display());
    Ok(())
}
