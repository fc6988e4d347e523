//! Method sweeps: average MI between raw windows and their augmented copies
//! for a set of augmentations, and the resulting taxonomy.

use std::collections::BTreeMap;

use crate::augment::{
    Axis, AugmentationSpec, ChannelMaskSpec, Direction, FrameSelection, JointMaskSpec, JointSelection,
    NoiseSpec, RotationSpec, DEFAULT_NOISE_SIGMA,
};
use crate::error::Result;
use crate::mi::{classify_methods, dataset_average_mi, MIReport, QuantizationConfig};
use crate::preprocess::{preprocess_sequence, PreprocessConfig};
use crate::skeleton::SkeletonSequence;
use crate::synth::{generate_dataset, ClassProfile};

/// The five representative methods compared in the taxonomy: 18° horizontal
/// rotation, x-channel mask, σ = 0.05 m noise, per-sequence random shear and
/// a 40 % random joint mask on every frame.
pub fn taxonomy_methods(seed: u64) -> Vec<(String, AugmentationSpec)> {
    vec![
        (
            "rotation-18".into(),
            AugmentationSpec::Rotation(RotationSpec::degrees(18.0, Direction::Horizontal)),
        ),
        (
            "channel-mask-x".into(),
            AugmentationSpec::ChannelMask(ChannelMaskSpec { axis: Axis::X }),
        ),
        (
            "gaussian-0.05".into(),
            AugmentationSpec::Noise(NoiseSpec {
                sigma: DEFAULT_NOISE_SIGMA,
                seed,
            }),
        ),
        ("shear".into(), AugmentationSpec::SampledShear { seed }),
        (
            "joint-mask-0.4".into(),
            AugmentationSpec::JointMask(JointMaskSpec {
                joints: JointSelection::RandomFraction(0.4),
                frames: FrameSelection::AllFrames,
                seed,
            }),
        ),
    ]
}

pub fn is_non_noise_method(name: &str) -> bool {
    matches!(name, "rotation-18" | "channel-mask-x")
}

/// Average MI of `spec` over `raws`, the i-th window keyed with index i.
pub fn method_average_mi(raws: &[SkeletonSequence], spec: &AugmentationSpec, cfg: &QuantizationConfig) -> Result<f64> {
    let augmented = raws
        .iter()
        .enumerate()
        .map(|(i, s)| spec.apply(s, i as u64))
        .collect::<Result<Vec<_>>>()?;
    dataset_average_mi(raws.iter().zip(&augmented), cfg)
}

pub fn sweep(raws: &[SkeletonSequence], methods: &[(String, AugmentationSpec)], cfg: &QuantizationConfig) -> Result<MIReport> {
    let mut per_method = BTreeMap::new();
    for (name, spec) in methods {
        per_method.insert(name.clone(), method_average_mi(raws, spec, cfg)?);
    }
    classify_methods(&per_method)
}

/// Preprocessed windows of a default two-class synthetic dataset with
/// `subjects` subjects in total (5 s at 30 Hz each) and `sensor_noise`
/// meters of tracking jitter.
pub fn synthetic_windows(
    subjects: usize,
    seed: u64,
    sensor_noise: f64,
    cfg: &PreprocessConfig,
) -> Result<Vec<SkeletonSequence>> {
    let profiles = ClassProfile::defaults();
    let per_class = subjects.div_ceil(profiles.len()).max(1);
    let data = generate_dataset(&profiles, per_class, seed, 5.0, 30.0)?.with_sensor_noise(sensor_noise, seed)?;
    let mut windows = Vec::new();
    for s in &data.sequences {
        windows.extend(preprocess_sequence(&s.sequence, cfg)?);
    }
    Ok(windows)
}
