//! The five skeleton augmentations (virtual-camera rotation with
//! translation, shear, Gaussian noise, joint mask, channel mask) and
//! composition of an augmented training set.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::groups::{joint_group, GroupName};
use crate::linalg::Mat3;
use crate::rng::substream;
use crate::skeleton::{LabeledSequence, Point, SkeletonSequence};

/// Virtual-camera angles, 18° apart.
pub const ANGLE_GRID_DEG: [u32; 10] = [18, 36, 54, 72, 90, 108, 126, 144, 162, 180];

/// Distance between the virtual camera and the subject, meters.
pub const DEFAULT_CAMERA_DISTANCE: f64 = 3.0;

/// Standard deviation of the additive coordinate noise, meters.
pub const DEFAULT_NOISE_SIGMA: f64 = 0.05;

/// Share of frames masked when a random-frame mask gives no rate.
pub const DEFAULT_FRAME_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "horizontal" | "h" => Ok(Direction::Horizontal),
            "vertical" | "v" => Ok(Direction::Vertical),
            _ => Err(Error::InvalidConfig(format!("unknown direction `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationSpec {
    /// Rotation angle, radians.
    pub delta: f64,
    pub direction: Direction,
    /// Radius of the virtual camera circle, meters.
    pub camera_distance: f64,
}

impl RotationSpec {
    pub fn degrees(deg: f64, direction: Direction) -> Self {
        Self {
            delta: deg.to_radians(),
            direction,
            camera_distance: DEFAULT_CAMERA_DISTANCE,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.delta.is_finite() || !self.camera_distance.is_finite() {
            return Err(Error::NonFiniteParameter("rotation"));
        }
        if self.delta.abs() >= 2.0 * PI {
            return Err(Error::InvalidConfig(format!(
                "rotation angle {} rad is outside (-2π, 2π)",
                self.delta
            )));
        }
        if self.camera_distance <= 0.0 {
            return Err(Error::InvalidConfig("camera distance must be positive".into()));
        }
        Ok(())
    }

    /// Rotation part in the row-vector convention.
    pub fn rotation_matrix(&self) -> Mat3 {
        match self.direction {
            Direction::Horizontal => Mat3::about_y(self.delta),
            Direction::Vertical => Mat3::about_x(self.delta),
        }
    }

    /// Origin displacement of the rotated camera: a chord of the camera
    /// circle, `2R sin(δ/2)` long, split into its two in-plane components.
    pub fn translation(&self) -> Point {
        let (hs, hc) = (self.delta / 2.0).sin_cos();
        let r = self.camera_distance;
        let lateral = -2.0 * r * hs * hc;
        let depth = 2.0 * r * hs * hs;
        match self.direction {
            Direction::Horizontal => [lateral, 0.0, depth],
            Direction::Vertical => [0.0, lateral, depth],
        }
    }

    pub fn apply_point(&self, p: Point) -> Point {
        let (s, c) = self.delta.sin_cos();
        let t = self.translation();
        let [x, y, z] = p;
        match self.direction {
            Direction::Horizontal => [x * c + z * s + t[0], y, -x * s + z * c + t[2]],
            Direction::Vertical => [x, y * c - z * s + t[1], y * s + z * c + t[2]],
        }
    }

    /// Removes the translation, then rotates by `-δ`.
    pub fn invert_point(&self, p: Point) -> Point {
        let (s, c) = self.delta.sin_cos();
        let t = self.translation();
        match self.direction {
            Direction::Horizontal => {
                let (x, z) = (p[0] - t[0], p[2] - t[2]);
                [x * c - z * s, p[1], x * s + z * c]
            }
            Direction::Vertical => {
                let (y, z) = (p[1] - t[1], p[2] - t[2]);
                [p[0], y * c + z * s, -y * s + z * c]
            }
        }
    }

    pub fn degrees_label(&self) -> String {
        format_number(self.delta.to_degrees())
    }
}

/// Rotates every point about the (centered) SpineBase and translates it to
/// the virtual camera's frame.
pub fn rotate_translate(seq: &SkeletonSequence, spec: &RotationSpec) -> Result<SkeletonSequence> {
    spec.validate()?;
    let dir = match spec.direction {
        Direction::Horizontal => "h",
        Direction::Vertical => "v",
    };
    let step = format!("rotate:{dir}{}deg,R={}", spec.degrees_label(), spec.camera_distance);
    Ok(seq.map_points(step, |p| spec.apply_point(p)))
}

/// Shear factors; the matrix rows are `(1,s1,s2), (s3,1,s4), (s5,s6,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShearSpec {
    pub factors: [f64; 6],
}

impl ShearSpec {
    pub fn matrix(&self) -> Mat3 {
        let [s1, s2, s3, s4, s5, s6] = self.factors;
        Mat3([[1.0, s1, s2], [s3, 1.0, s4], [s5, s6, 1.0]])
    }
}

/// Six factors i.i.d. uniform on `[-1, 1]` from the `shear` substream.
pub fn sample_shear(seed: u64, index: u64) -> ShearSpec {
    let mut rng = substream(seed, "shear", index);
    let mut factors = [0.0; 6];
    for f in &mut factors {
        *f = rng.random_range(-1.0..=1.0);
    }
    ShearSpec { factors }
}

/// Multiplies every point by one shear matrix.
pub fn shear(seq: &SkeletonSequence, spec: &ShearSpec) -> SkeletonSequence {
    let m = spec.matrix();
    let step = format!(
        "shear:[{}]",
        spec.factors.iter().map(|f| format!("{f:.6}")).collect::<Vec<_>>().join(",")
    );
    seq.map_points(step, |p| m.apply(p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    /// Standard deviation, meters.
    pub sigma: f64,
    pub seed: u64,
}

/// Adds i.i.d. `N(0, sigma²)` to every coordinate, drawn from the
/// `gaussian_noise` substream for `index`.
pub fn add_gaussian_noise(seq: &SkeletonSequence, spec: &NoiseSpec, index: u64) -> Result<SkeletonSequence> {
    if !spec.sigma.is_finite() {
        return Err(Error::NonFiniteParameter("sigma"));
    }
    if spec.sigma < 0.0 {
        return Err(Error::InvalidConfig(format!("negative noise sigma {}", spec.sigma)));
    }
    let step = format!("noise:sigma={}", spec.sigma);
    if spec.sigma == 0.0 {
        return Ok(seq.clone().with_step(step));
    }
    let mut rng = substream(spec.seed, "gaussian_noise", index);
    let sigma = spec.sigma;
    Ok(seq.map_points(step, |p| {
        let mut out = p;
        for v in &mut out {
            let n: f64 = rng.sample(StandardNormal);
            *v += sigma * n;
        }
        out
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub enum JointSelection {
    Group(GroupName),
    Joints(Vec<usize>),
    /// `round_half_up(fraction · joint_count)` joints picked at random.
    RandomFraction(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrameSelection {
    AllFrames,
    /// `round_half_up(fraction · frame_count)` frames picked at random.
    RandomFrames { fraction: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointMaskSpec {
    pub joints: JointSelection,
    pub frames: FrameSelection,
    pub seed: u64,
}

pub fn round_half_up_count(fraction: f64, n: usize) -> usize {
    ((fraction * n as f64 + 0.5).floor() as usize).min(n)
}

fn check_fraction(f: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::InvalidConfig(format!("fraction {f} outside [0, 1]")));
    }
    Ok(())
}

fn sorted_sample(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut picked = index::sample(rng, n, k).into_vec();
    picked.sort_unstable();
    picked
}

/// Joint indices the mask would zero for sequence `index`.
pub fn masked_joints(seq: &SkeletonSequence, spec: &JointMaskSpec, index: u64) -> Result<Vec<usize>> {
    let n = seq.joint_count();
    match &spec.joints {
        JointSelection::Group(g) => Ok(joint_group(*g, seq.schema).members.into_iter().collect()),
        JointSelection::Joints(js) => {
            if let Some(&bad) = js.iter().find(|&&j| j >= n) {
                return Err(Error::JointOutOfRange {
                    index: bad,
                    schema: seq.schema,
                });
            }
            let mut js = js.clone();
            js.sort_unstable();
            js.dedup();
            Ok(js)
        }
        JointSelection::RandomFraction(f) => {
            check_fraction(*f)?;
            let mut rng = substream(spec.seed, "joint_mask", index);
            Ok(sorted_sample(&mut rng, n, round_half_up_count(*f, n)))
        }
    }
}

/// Frame indices the mask applies to for sequence `index`.
pub fn masked_frames(seq: &SkeletonSequence, spec: &JointMaskSpec, index: u64) -> Result<Vec<usize>> {
    match spec.frames {
        FrameSelection::AllFrames => Ok((0..seq.len()).collect()),
        FrameSelection::RandomFrames { fraction } => {
            check_fraction(fraction)?;
            let mut rng = substream(spec.seed, "joint_mask_frames", index);
            Ok(sorted_sample(&mut rng, seq.len(), round_half_up_count(fraction, seq.len())))
        }
    }
}

/// Zeroes the selected joints on the selected frames.
pub fn joint_mask(seq: &SkeletonSequence, spec: &JointMaskSpec, index: u64) -> Result<SkeletonSequence> {
    let joints = masked_joints(seq, spec, index)?;
    let frames = masked_frames(seq, spec, index)?;
    let mut out = seq.clone();
    for &f in &frames {
        for &j in &joints {
            out.frames[f].positions[j] = [0.0; 3];
        }
    }
    Ok(out.with_step(format!(
        "joint_mask:joints={joints:?},frames={}/{}",
        frames.len(),
        seq.len()
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        ["x", "y", "z"][self.index()]
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            _ => Err(Error::InvalidConfig(format!("unknown axis `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelMaskSpec {
    pub axis: Axis,
}

/// Zeroes one coordinate axis of every joint in every frame.
pub fn channel_mask(seq: &SkeletonSequence, spec: &ChannelMaskSpec) -> SkeletonSequence {
    let a = spec.axis.index();
    seq.map_points(format!("channel_mask:{}", spec.axis.as_str()), |mut p| {
        p[a] = 0.0;
        p
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum AugmentationSpec {
    Identity,
    Rotation(RotationSpec),
    Shear(ShearSpec),
    /// A fresh shear matrix per sequence, drawn with [`sample_shear`].
    SampledShear { seed: u64 },
    Noise(NoiseSpec),
    JointMask(JointMaskSpec),
    ChannelMask(ChannelMaskSpec),
}

impl AugmentationSpec {
    /// Column name in the `raw+<tag>` convention.
    pub fn tag(&self) -> String {
        match self {
            AugmentationSpec::Identity => "identity".into(),
            AugmentationSpec::Rotation(r) => match r.direction {
                Direction::Horizontal => format!("h{}", r.degrees_label()),
                Direction::Vertical => format!("v{}", r.degrees_label()),
            },
            AugmentationSpec::Shear(_) => "shear".into(),
            AugmentationSpec::SampledShear { seed } => format!("shear{seed}"),
            AugmentationSpec::Noise(n) => format!("gauss{}", format_number(n.sigma)),
            AugmentationSpec::JointMask(m) => match &m.joints {
                JointSelection::Group(g) => capitalize(g.as_str()),
                JointSelection::Joints(js) => format!(
                    "joints{}",
                    js.iter().map(|j| j.to_string()).collect::<Vec<_>>().join("_")
                ),
                JointSelection::RandomFraction(f) => format!("jm{}", format_number(*f)),
            },
            AugmentationSpec::ChannelMask(c) => format!("sub{}", c.axis.as_str()),
        }
    }

    /// Augmentation family, as used in the MI taxonomy.
    pub fn family(&self) -> &'static str {
        match self {
            AugmentationSpec::Identity => "identity",
            AugmentationSpec::Rotation(_) => "rotation",
            AugmentationSpec::Shear(_) | AugmentationSpec::SampledShear { .. } => "shear",
            AugmentationSpec::Noise(_) => "gaussian_noise",
            AugmentationSpec::JointMask(_) => "joint_mask",
            AugmentationSpec::ChannelMask(_) => "channel_mask",
        }
    }

    /// Applies the augmentation to the `index`-th sequence of a dataset;
    /// `index` keys the random substreams.
    pub fn apply(&self, seq: &SkeletonSequence, index: u64) -> Result<SkeletonSequence> {
        let out = match self {
            AugmentationSpec::Identity => seq.clone(),
            AugmentationSpec::Rotation(r) => rotate_translate(seq, r)?,
            AugmentationSpec::Shear(s) => shear(seq, s),
            AugmentationSpec::SampledShear { seed } => shear(seq, &sample_shear(*seed, index)),
            AugmentationSpec::Noise(n) => add_gaussian_noise(seq, n, index)?,
            AugmentationSpec::JointMask(m) => joint_mask(seq, m, index)?,
            AugmentationSpec::ChannelMask(c) => channel_mask(seq, c),
        };
        Ok(out.with_step(format!("{AUGMENT_PREFIX}raw+{}", self.tag())))
    }
}

/// Provenance prefix marking an augmented copy.
pub const AUGMENT_PREFIX: &str = "augment:";

pub fn is_augmented(provenance: &[String]) -> bool {
    provenance.iter().any(|p| p.starts_with(AUGMENT_PREFIX))
}

/// Raw training sequences followed by one augmented copy per
/// (spec, sequence) pair, spec-major. Labels and subject ids are inherited.
pub fn compose_dataset(train: &[LabeledSequence], specs: &[AugmentationSpec]) -> Result<Vec<LabeledSequence>> {
    if specs.is_empty() {
        return Err(Error::Empty("compose_dataset needs at least one augmentation"));
    }
    let mut out = Vec::with_capacity(train.len() * (1 + specs.len()));
    out.extend_from_slice(train);
    for spec in specs {
        for (i, item) in train.iter().enumerate() {
            out.push(LabeledSequence {
                sequence: spec.apply(&item.sequence, i as u64)?,
                subject_id: item.subject_id.clone(),
                label: item.label.clone(),
                view: item.view,
            });
        }
    }
    Ok(out)
}

/// Shortest decimal with trailing zeros trimmed (`18`, `0.05`).
fn format_number(v: f64) -> String {
    let s = format!("{:.6}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(first) => first.to_ascii_uppercase().to_string() + c.as_str(),
        None => String::new(),
    }
}

impl fmt::Display for AugmentationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "raw+{}", self.tag())
    }
}
