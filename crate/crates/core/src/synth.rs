//! Parametric synthetic walking skeletons.
//!
//! A subject walks straight towards a virtual Kinect at the origin (SpineBase
//! z decreases). Joints are placed by forward kinematics from SpineBase with
//! fixed bone lengths: legs swing in antiphase at the cadence, arms swing
//! against the same-side leg in a slightly inward-tilted plane, and the
//! whole body bobs vertically twice per stride.
//!
//! Camera axes: x towards the subject's left, y up, z away from the camera.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dataset::{DatasetManifest, ManifestEntry, Split};
use crate::error::{Error, Result};
use crate::rng::{stream_seed, substream};
use crate::skeleton::{Frame, LabeledSequence, Point, Schema, SkeletonSequence, View};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimbLengths {
    pub hip_offset: f64,
    pub thigh: f64,
    pub shank: f64,
    pub foot: f64,
    pub spine_lower: f64,
    pub spine_upper: f64,
    pub neck: f64,
    pub head: f64,
    pub shoulder_offset: f64,
    pub upper_arm: f64,
    pub forearm: f64,
    pub hand: f64,
    pub hand_tip: f64,
    pub thumb: f64,
}

impl Default for LimbLengths {
    fn default() -> Self {
        Self {
            hip_offset: 0.09,
            thigh: 0.43,
            shank: 0.42,
            foot: 0.14,
            spine_lower: 0.28,
            spine_upper: 0.22,
            neck: 0.08,
            head: 0.12,
            shoulder_offset: 0.18,
            upper_arm: 0.29,
            forearm: 0.25,
            hand: 0.08,
            hand_tip: 0.07,
            thumb: 0.05,
        }
    }
}

impl LimbLengths {
    fn scaled(&self, k: f64) -> Self {
        Self {
            hip_offset: self.hip_offset * k,
            thigh: self.thigh * k,
            shank: self.shank * k,
            foot: self.foot * k,
            spine_lower: self.spine_lower * k,
            spine_upper: self.spine_upper * k,
            neck: self.neck * k,
            head: self.head * k,
            shoulder_offset: self.shoulder_offset * k,
            upper_arm: self.upper_arm * k,
            forearm: self.forearm * k,
            hand: self.hand * k,
            hand_tip: self.hand_tip * k,
            thumb: self.thumb * k,
        }
    }

    fn all(&self) -> [f64; 14] {
        [
            self.hip_offset,
            self.thigh,
            self.shank,
            self.foot,
            self.spine_lower,
            self.spine_upper,
            self.neck,
            self.head,
            self.shoulder_offset,
            self.upper_arm,
            self.forearm,
            self.hand,
            self.hand_tip,
            self.thumb,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaitParams {
    /// m/s
    pub gait_speed: f64,
    /// m, two steps
    pub stride_length: f64,
    /// rad
    pub arm_swing_amplitude: f64,
    /// m
    pub vertical_head_amplitude: f64,
    /// strides per second
    pub cadence: f64,
    pub limb_lengths: LimbLengths,
    pub phase_noise_sigma: f64,
}

impl GaitParams {
    pub fn validate(&self) -> Result<()> {
        let scalars = [
            self.gait_speed,
            self.stride_length,
            self.arm_swing_amplitude,
            self.vertical_head_amplitude,
            self.cadence,
            self.phase_noise_sigma,
        ];
        if scalars
            .iter()
            .chain(self.limb_lengths.all().iter())
            .any(|v| !v.is_finite() || *v <= 0.0)
        {
            return Err(Error::InvalidConfig("gait parameters must be positive".into()));
        }
        if self.arm_swing_amplitude >= PI / 2.0 {
            return Err(Error::InvalidConfig("arm swing amplitude must be below π/2".into()));
        }
        Ok(())
    }
}

/// Relative spread of each subject parameter around the class mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaitSpread {
    pub gait_speed: f64,
    pub stride_length: f64,
    pub arm_swing_amplitude: f64,
    pub vertical_head_amplitude: f64,
    pub cadence: f64,
    pub limb_scale: f64,
}

impl Default for GaitSpread {
    fn default() -> Self {
        Self {
            gait_speed: 0.1,
            stride_length: 0.1,
            arm_swing_amplitude: 0.1,
            vertical_head_amplitude: 0.1,
            cadence: 0.05,
            limb_scale: 0.06,
        }
    }
}

impl GaitSpread {
    fn all(&self) -> [f64; 6] {
        [
            self.gait_speed,
            self.stride_length,
            self.arm_swing_amplitude,
            self.vertical_head_amplitude,
            self.cadence,
            self.limb_scale,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassProfile {
    pub label: String,
    pub params_mean: GaitParams,
    #[serde(default)]
    pub params_spread: GaitSpread,
}

impl ClassProfile {
    pub fn validate(&self) -> Result<()> {
        self.params_mean.validate()?;
        if self.params_spread.all().iter().any(|s| !(0.0..=0.5).contains(s)) {
            return Err(Error::InvalidConfig(format!(
                "profile `{}`: spreads must lie in [0, 0.5]",
                self.label
            )));
        }
        Ok(())
    }

    /// Slower, shorter strides, less arm swing and head movement.
    pub fn depressed_like() -> Self {
        Self {
            label: "depressed".into(),
            params_mean: GaitParams {
                gait_speed: 0.8,
                stride_length: 1.0,
                arm_swing_amplitude: 0.25,
                vertical_head_amplitude: 0.02,
                cadence: 0.8,
                limb_lengths: LimbLengths::default(),
                phase_noise_sigma: 0.05,
            },
            params_spread: GaitSpread::default(),
        }
    }

    pub fn control_like() -> Self {
        Self {
            label: "control".into(),
            params_mean: GaitParams {
                gait_speed: 1.2,
                stride_length: 1.3,
                arm_swing_amplitude: 0.5,
                vertical_head_amplitude: 0.04,
                cadence: 0.92,
                limb_lengths: LimbLengths::default(),
                phase_noise_sigma: 0.05,
            },
            params_spread: GaitSpread::default(),
        }
    }

    pub fn defaults() -> Vec<Self> {
        vec![Self::control_like(), Self::depressed_like()]
    }
}

/// Draws one subject's parameters from a profile.
pub fn subject_params(profile: &ClassProfile, subject_seed: u64) -> GaitParams {
    let mut rng = substream(subject_seed, "subject_params", 0);
    let mut jitter = |spread: f64| 1.0 + spread * rng.random_range(-1.0..=1.0);
    let m = &profile.params_mean;
    let s = &profile.params_spread;
    let gait_speed = m.gait_speed * jitter(s.gait_speed);
    let stride_length = m.stride_length * jitter(s.stride_length);
    let arm = (m.arm_swing_amplitude * jitter(s.arm_swing_amplitude)).min(PI / 2.0 - 1e-3);
    let head = m.vertical_head_amplitude * jitter(s.vertical_head_amplitude);
    let cadence = m.cadence * jitter(s.cadence);
    let limbs = m.limb_lengths.scaled(jitter(s.limb_scale));
    GaitParams {
        gait_speed,
        stride_length,
        arm_swing_amplitude: arm,
        vertical_head_amplitude: head,
        cadence,
        limb_lengths: limbs,
        phase_noise_sigma: m.phase_noise_sigma,
    }
}

fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(v: Point, k: f64) -> Point {
    [v[0] * k, v[1] * k, v[2] * k]
}

fn unit(v: Point) -> Point {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    scale(v, 1.0 / n)
}

/// Downward direction swung forward (towards −z) by `angle`.
fn sagittal(angle: f64) -> Point {
    [0.0, -angle.cos(), -angle.sin()]
}

const TRUNK_LEAN: f64 = 0.05;
const ARM_PLANE_TILT: f64 = 0.35;
const KNEE_FLEX: f64 = 0.5;
const BODY_SWAY: f64 = 0.015;

/// Joint positions for one frame given the gait phase.
fn pose(p: &GaitParams, pelvis: Point, phase: f64) -> Vec<Point> {
    let l = &p.limb_lengths;
    let mut j = vec![[0.0; 3]; 25];
    j[0] = pelvis;

    let up = [0.0, TRUNK_LEAN.cos(), -TRUNK_LEAN.sin()];
    j[1] = add(j[0], scale(up, l.spine_lower));
    j[20] = add(j[1], scale(up, l.spine_upper));
    j[2] = add(j[20], scale(up, l.neck));
    j[3] = add(j[2], scale(up, l.head));

    let leg = l.thigh + l.shank;
    let hip_amp = (p.stride_length / (4.0 * leg)).clamp(0.0, 0.9).asin();
    // (side sign, hip, knee, ankle, foot, leg phase)
    for (side, hip, knee, ankle, foot, offset) in [(1.0, 12, 13, 14, 15, 0.0), (-1.0, 16, 17, 18, 19, PI)] {
        let ph = phase + offset;
        let flex = hip_amp * ph.sin();
        let knee_bend = KNEE_FLEX * 0.5 * (1.0 + (ph + PI / 3.0).cos());
        j[hip] = add(j[0], scale(unit([side, -0.3, 0.0]), l.hip_offset));
        j[knee] = add(j[hip], scale(sagittal(flex), l.thigh));
        j[ankle] = add(j[knee], scale(sagittal(flex - knee_bend), l.shank));
        j[foot] = add(j[ankle], scale(unit([0.0, -0.25, -1.0]), l.foot));
    }

    // arms swing against the same-side leg
    let tilt = ARM_PLANE_TILT;
    for (side, shoulder, elbow, wrist, hand, tip, thumb, offset) in
        [(1.0, 4, 5, 6, 7, 21, 22, PI), (-1.0, 8, 9, 10, 11, 23, 24, 0.0)]
    {
        let swing = p.arm_swing_amplitude * (phase + offset).sin();
        let forward = [-side * tilt.sin(), 0.0, -tilt.cos()];
        let dir = |a: f64| add([0.0, -a.cos(), 0.0], scale(forward, a.sin()));
        let fore = 1.3 * swing + 0.25;
        j[shoulder] = add(j[20], scale(unit([side, -0.1, 0.0]), l.shoulder_offset));
        j[elbow] = add(j[shoulder], scale(dir(swing), l.upper_arm));
        j[wrist] = add(j[elbow], scale(dir(fore), l.forearm));
        j[hand] = add(j[wrist], scale(dir(fore), l.hand));
        j[tip] = add(j[hand], scale(dir(fore), l.hand_tip));
        let thumb_dir = unit(add(scale(dir(fore), 0.7), [-side * 0.7, 0.0, 0.0]));
        j[thumb] = add(j[wrist], scale(thumb_dir, l.thumb));
    }
    j
}

/// Generates one forward-walking Full25 subject.
pub fn generate_subject(
    profile: &ClassProfile,
    subject_id: &str,
    subject_seed: u64,
    duration_s: f64,
    frame_rate: f64,
) -> Result<LabeledSequence> {
    if !(duration_s > 0.0 && duration_s.is_finite()) || !(frame_rate > 0.0 && frame_rate.is_finite()) {
        return Err(Error::InvalidConfig("duration and frame rate must be positive".into()));
    }
    profile.validate()?;
    let p = subject_params(profile, subject_seed);
    let n = (duration_s * frame_rate).round() as usize;
    let dt = 1.0 / frame_rate;
    let mut rng = substream(subject_seed, "phase", 0);
    let mut phase = rng.random_range(0.0..TAU);
    let hip_height = p.limb_lengths.thigh + p.limb_lengths.shank + 0.06;
    let z0 = 1.0 + p.gait_speed * duration_s;

    let frames = (0..n)
        .map(|i| {
            let t = i as f64 * dt;
            if i > 0 {
                let jitter: f64 = rng.sample(StandardNormal);
                phase += TAU * p.cadence * dt * (1.0 + p.phase_noise_sigma * jitter);
            }
            let pelvis = [
                BODY_SWAY * phase.sin(),
                hip_height + p.vertical_head_amplitude * (2.0 * phase).cos(),
                z0 - p.gait_speed * t,
            ];
            Frame {
                timestamp: t,
                positions: pose(&p, pelvis, phase),
            }
        })
        .collect();
    let sequence = SkeletonSequence::new(Schema::Full25, frame_rate, frames)
        .with_step(format!("synth:{}:{subject_seed}", profile.label));
    Ok(LabeledSequence {
        sequence,
        subject_id: subject_id.to_string(),
        label: profile.label.clone(),
        view: View::Front,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDataset {
    pub manifest: DatasetManifest,
    /// Aligned with `manifest.entries`.
    pub sequences: Vec<LabeledSequence>,
}

/// `subjects_per_class` subjects for every profile, class-major. Entry paths
/// are `sequences/<subject_id>.csv`.
pub fn generate_dataset(
    profiles: &[ClassProfile],
    subjects_per_class: usize,
    master_seed: u64,
    duration_s: f64,
    frame_rate: f64,
) -> Result<SyntheticDataset> {
    if subjects_per_class == 0 {
        return Err(Error::InvalidConfig("subjects_per_class must be at least 1".into()));
    }
    if profiles.is_empty() {
        return Err(Error::Empty("no class profiles"));
    }
    let mut entries = Vec::new();
    let mut sequences = Vec::new();
    let mut ordinal = 0u64;
    for profile in profiles {
        for k in 0..subjects_per_class {
            let subject_id = format!("{}-{k:03}", profile.label);
            let seed = stream_seed(master_seed, "subject", ordinal);
            ordinal += 1;
            let seq = generate_subject(profile, &subject_id, seed, duration_s, frame_rate)?;
            entries.push(ManifestEntry {
                id: subject_id.clone(),
                path: format!("sequences/{subject_id}.csv"),
                subject_id: subject_id.clone(),
                label: profile.label.clone(),
                view: View::Front,
                split: Split::Train,
                provenance: seq.sequence.provenance.clone(),
                source_id: None,
            });
            sequences.push(seq);
        }
    }
    let manifest = DatasetManifest {
        label_set: profiles.iter().map(|p| p.label.clone()).collect(),
        rng_seed: master_seed,
        entries,
    };
    manifest.validate()?;
    Ok(SyntheticDataset { manifest, sequences })
}

/// Typical Kinect-v2 per-coordinate tracking jitter, in meters.
pub const DEFAULT_SENSOR_NOISE: f64 = 0.01;

/// Adds i.i.d. N(0, sigma²) tracking jitter to every coordinate, drawn from
/// the "sensor_noise" substream of `seed`.
pub fn add_sensor_noise(seq: &SkeletonSequence, sigma: f64, seed: u64) -> Result<SkeletonSequence> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::NonFiniteParameter("sensor noise sigma"));
    }
    if sigma == 0.0 {
        return Ok(seq.clone());
    }
    let mut rng = substream(seed, "sensor_noise", 0);
    Ok(seq.map_points(format!("sensor_noise:{sigma}"), |p| {
        let mut q = p;
        for c in &mut q {
            let e: f64 = rng.sample(StandardNormal);
            *c += sigma * e;
        }
        q
    }))
}

impl SyntheticDataset {
    /// Applies [`add_sensor_noise`] to every subject, keyed by its ordinal
    /// under `master_seed`, and refreshes the manifest provenance.
    pub fn with_sensor_noise(mut self, sigma: f64, master_seed: u64) -> Result<Self> {
        for (i, (entry, labeled)) in self.manifest.entries.iter_mut().zip(&mut self.sequences).enumerate() {
            let seed = stream_seed(master_seed, "sensor_noise", i as u64);
            labeled.sequence = add_sensor_noise(&labeled.sequence, sigma, seed)?;
            entry.provenance = labeled.sequence.provenance.clone();
        }
        Ok(self)
    }
}
