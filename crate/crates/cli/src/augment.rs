use std::path::PathBuf;

use anyhow::Result;
use clap::ValueEnum;
use skelaug::augment::{
    compose_dataset, AugmentationSpec, Axis, ChannelMaskSpec, Direction, FrameSelection, JointMaskSpec,
    JointSelection, NoiseSpec, RotationSpec, ShearSpec, ANGLE_GRID_DEG, DEFAULT_NOISE_SIGMA,
};
use skelaug::dataset::{DatasetManifest, ManifestEntry, Split};
use skelaug::groups::GroupName;
use skelaug::{LabeledSequence, SkeletonSequence};

use crate::common::{load_dataset, usage, write_dataset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Identity,
    Rotation,
    Shear,
    Gaussian,
    JointMask,
    ChannelMask,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Horizontal rotation, 18° to 180°.
    Table1,
    /// Vertical rotation, 18° to 180°.
    Table2,
    /// Three random shear draws.
    Table3,
    /// Channel mask on x, y and z.
    Table4,
    /// Three Gaussian noise draws.
    Table5,
    /// Body-part masks, then 20/40/60/80 % random joint masks.
    Table6,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, required_unless_present = "preset")]
    method: Option<Method>,
    /// Write one dataset per table column into `<out>/raw+<tag>/`.
    #[arg(long, value_enum, conflicts_with = "method")]
    preset: Option<Preset>,
    /// Rotation angle, degrees.
    #[arg(long, allow_negative_numbers = true)]
    angle: Option<f64>,
    #[arg(long, default_value = "horizontal")]
    direction: String,
    /// Masked axis for channel-mask.
    #[arg(long, default_value = "x")]
    axis: String,
    /// Noise standard deviation, meters.
    #[arg(long, default_value_t = DEFAULT_NOISE_SIGMA)]
    sigma: f64,
    /// Fixed shear factors s1..s6; random per sequence when absent.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    shear: Option<Vec<f64>>,
    /// Joint group for joint-mask (upper_body, lower_body, trunk, limbs).
    #[arg(long)]
    group: Option<String>,
    /// Explicit joint indices for joint-mask.
    #[arg(long, value_delimiter = ',')]
    joints: Option<Vec<usize>>,
    /// Share of joints masked at random for joint-mask.
    #[arg(long)]
    fraction: Option<f64>,
    /// Mask only this share of frames (all frames when absent).
    #[arg(long)]
    frame_fraction: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn frames(args: &Args) -> FrameSelection {
    match args.frame_fraction {
        Some(fraction) => FrameSelection::RandomFrames { fraction },
        None => FrameSelection::AllFrames,
    }
}

fn single_spec(args: &Args, method: Method) -> Result<AugmentationSpec> {
    let direction: Direction = args.direction.parse().map_err(|e: skelaug::Error| usage(e.to_string()))?;
    Ok(match method {
        Method::Identity => AugmentationSpec::Identity,
        Method::Rotation => AugmentationSpec::Rotation(RotationSpec::degrees(args.angle.unwrap_or(18.0), direction)),
        Method::Shear => match &args.shear {
            Some(f) if f.len() != 6 => return Err(usage(format!("--shear needs 6 factors, got {}", f.len()))),
            Some(f) => AugmentationSpec::Shear(ShearSpec {
                factors: [f[0], f[1], f[2], f[3], f[4], f[5]],
            }),
            None => AugmentationSpec::SampledShear { seed: args.seed },
        },
        Method::Gaussian => {
            if args.sigma.is_nan() || args.sigma < 0.0 {
                return Err(usage(format!("--sigma must be non-negative, got {}", args.sigma)));
            }
            AugmentationSpec::Noise(NoiseSpec {
                sigma: args.sigma,
                seed: args.seed,
            })
        }
        Method::JointMask => {
            let joints = match (&args.group, &args.joints, args.fraction) {
                (Some(g), None, None) => {
                    JointSelection::Group(g.parse::<GroupName>().map_err(|e| usage(e.to_string()))?)
                }
                (None, Some(js), None) => JointSelection::Joints(js.clone()),
                (None, None, Some(f)) if (0.0..=1.0).contains(&f) => JointSelection::RandomFraction(f),
                (None, None, Some(f)) => return Err(usage(format!("--fraction {f} outside [0, 1]"))),
                _ => return Err(usage("joint-mask needs exactly one of --group, --joints, --fraction")),
            };
            AugmentationSpec::JointMask(JointMaskSpec {
                joints,
                frames: frames(args),
                seed: args.seed,
            })
        }
        Method::ChannelMask => AugmentationSpec::ChannelMask(ChannelMaskSpec {
            axis: args.axis.parse::<Axis>().map_err(|e| usage(e.to_string()))?,
        }),
    })
}

/// Column name and spec for every column of a preset table.
pub fn preset_columns(preset: Preset, angle: Option<f64>, seed: u64, frames: FrameSelection) -> Result<Vec<(String, AugmentationSpec)>> {
    if let Some(a) = angle {
        if !ANGLE_GRID_DEG.iter().any(|&g| f64::from(g) == a) {
            return Err(usage(format!("angle {a} is not on the 18° preset grid")));
        }
        if !matches!(preset, Preset::Table1 | Preset::Table2) {
            return Err(usage("--angle only applies to table1 and table2"));
        }
    }
    let named = |spec: AugmentationSpec| (spec.to_string(), spec);
    let rotations = |dir: Direction| {
        ANGLE_GRID_DEG
            .iter()
            .map(|&g| f64::from(g))
            .filter(|&g| angle.is_none_or(|a| a == g))
            .map(|g| named(AugmentationSpec::Rotation(RotationSpec::degrees(g, dir))))
            .collect::<Vec<_>>()
    };
    Ok(match preset {
        Preset::Table1 => rotations(Direction::Horizontal),
        Preset::Table2 => rotations(Direction::Vertical),
        Preset::Table3 => (1..=3u64)
            .map(|g| (format!("raw+shear-{g}"), AugmentationSpec::SampledShear { seed: seed + g - 1 }))
            .collect(),
        Preset::Table4 => [Axis::X, Axis::Y, Axis::Z]
            .into_iter()
            .map(|axis| named(AugmentationSpec::ChannelMask(ChannelMaskSpec { axis })))
            .collect(),
        Preset::Table5 => (1..=3u64)
            .map(|g| {
                let spec = AugmentationSpec::Noise(NoiseSpec {
                    sigma: DEFAULT_NOISE_SIGMA,
                    seed: seed + g - 1,
                });
                (format!("raw+gauss-{g}"), spec)
            })
            .collect(),
        Preset::Table6 => {
            let mut cols: Vec<_> = GroupName::ALL
                .into_iter()
                .map(|g| {
                    named(AugmentationSpec::JointMask(JointMaskSpec {
                        joints: JointSelection::Group(g),
                        frames,
                        seed,
                    }))
                })
                .collect();
            cols.extend([0.2, 0.4, 0.6, 0.8].into_iter().map(|f| {
                named(AugmentationSpec::JointMask(JointMaskSpec {
                    joints: JointSelection::RandomFraction(f),
                    frames,
                    seed,
                }))
            }));
            cols
        }
    })
}

/// Every input entry unchanged, followed by one augmented copy of each
/// training entry per spec. Test entries are never augmented.
pub fn augment_dataset(
    manifest: &DatasetManifest,
    sequences: &[SkeletonSequence],
    specs: &[AugmentationSpec],
) -> Result<(DatasetManifest, Vec<SkeletonSequence>)> {
    let train: Vec<(&ManifestEntry, &SkeletonSequence)> = manifest
        .entries
        .iter()
        .zip(sequences)
        .filter(|(e, _)| e.split == Split::Train)
        .collect();
    let labeled: Vec<LabeledSequence> = train
        .iter()
        .map(|(e, s)| LabeledSequence {
            sequence: (*s).clone(),
            subject_id: e.subject_id.clone(),
            label: e.label.clone(),
            view: e.view,
        })
        .collect();
    let composed = compose_dataset(&labeled, specs)?;

    let mut out = manifest.clone();
    let mut out_seqs = sequences.to_vec();
    for (k, item) in composed.into_iter().enumerate().skip(train.len()) {
        let spec = &specs[k / train.len() - 1];
        let source = train[k % train.len()].0;
        out.entries.push(ManifestEntry {
            id: format!("{}+{}", source.id, spec.tag()),
            path: String::new(),
            subject_id: item.subject_id,
            label: item.label,
            view: item.view,
            split: Split::Train,
            provenance: item.sequence.provenance.clone(),
            source_id: Some(source.id.clone()),
        });
        out_seqs.push(item.sequence);
    }
    Ok((out, out_seqs))
}

pub fn run(args: Args) -> Result<()> {
    let columns = match (args.preset, args.method) {
        (Some(preset), _) => preset_columns(preset, args.angle, args.seed, frames(&args))?,
        (None, Some(method)) => {
            let spec = single_spec(&args, method)?;
            vec![(String::new(), spec)]
        }
        (None, None) => return Err(usage("either --method or --preset is required")),
    };
    let (manifest, sequences) = load_dataset(&args.input)?;
    if !manifest.entries.iter().any(|e| e.split == Split::Train) {
        return Err(anyhow::anyhow!("{} has no training entries", args.input.display()));
    }
    for (column, spec) in &columns {
        let dir = if column.is_empty() { args.out.clone() } else { args.out.join(column) };
        let (m, s) = augment_dataset(&manifest, &sequences, std::slice::from_ref(spec))?;
        let n = m.entries.len();
        let path = write_dataset(&dir, m, &s)?;
        println!("{spec}: {n} entries in {}", path.display());
    }
    Ok(())
}
