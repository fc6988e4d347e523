//! Depression-data preprocessing: view splitting, camera-tilt correction,
//! SpineBase centering, temporal Gaussian smoothing, 25→17 joint
//! simplification, spine-length normalization and fixed-window segmentation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::skeleton::{
    Frame, Point, Schema, SkeletonSequence, FULL_TO_SIMPLIFIED, SPINE_BASE,
};

/// Default binomial smoothing kernel, `1/16 · [1, 4, 6, 4, 1]`.
pub const DEFAULT_KERNEL: [f64; 5] = [1.0 / 16.0, 4.0 / 16.0, 6.0 / 16.0, 4.0 / 16.0, 1.0 / 16.0];

/// Shortest run, in frames, that [`split_views`] keeps.
pub const MIN_VIEW_RUN: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PreprocessConfig {
    /// Angle between camera and ground, radians.
    pub camera_tilt_theta: f64,
    pub gaussian_window: usize,
    pub gaussian_kernel: Vec<f64>,
    pub simplify: bool,
    /// Divide by the first-frame SpineBase–SpineShoulder distance.
    pub normalize_spine: bool,
    pub window_frames: usize,
    pub window_stride: usize,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            camera_tilt_theta: 0.0,
            gaussian_window: 5,
            gaussian_kernel: DEFAULT_KERNEL.to_vec(),
            simplify: true,
            normalize_spine: false,
            window_frames: 100,
            window_stride: 50,
        }
    }
}

impl PreprocessConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.camera_tilt_theta.is_finite() {
            return Err(Error::NonFiniteParameter("camera_tilt_theta"));
        }
        if self.gaussian_kernel.len() != self.gaussian_window {
            return Err(Error::InvalidConfig(format!(
                "gaussian kernel has {} weights but the window is {}",
                self.gaussian_kernel.len(),
                self.gaussian_window
            )));
        }
        if self.gaussian_window.is_multiple_of(2) {
            return Err(Error::InvalidConfig("gaussian window must be odd".into()));
        }
        let sum: f64 = self.gaussian_kernel.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!(
                "gaussian kernel sums to {sum}, expected 1"
            )));
        }
        if self.window_frames < 2 {
            return Err(Error::InvalidConfig("window_frames must be at least 2".into()));
        }
        if self.window_stride < 1 {
            return Err(Error::InvalidConfig("window_stride must be at least 1".into()));
        }
        Ok(())
    }
}

/// Rotates every point about the x axis by the camera tilt:
/// `(x, y cosθ − z sinθ, y sinθ + z cosθ)`.
pub fn tilt_correct(seq: &SkeletonSequence, theta: f64) -> Result<SkeletonSequence> {
    if !theta.is_finite() {
        return Err(Error::NonFiniteParameter("theta"));
    }
    let step = format!("tilt:{theta}");
    if theta == 0.0 {
        return Ok(seq.clone().with_step(step));
    }
    let rx = Mat3::about_x(theta);
    Ok(seq.map_points(step, |p| rx.apply(p)))
}

/// Subtracts each frame's SpineBase position from every joint of the frame.
pub fn center_on_spinebase(seq: &SkeletonSequence) -> SkeletonSequence {
    let frames = seq
        .frames
        .iter()
        .map(|f| {
            let o = f.positions[SPINE_BASE];
            Frame {
                timestamp: f.timestamp,
                positions: f
                    .positions
                    .iter()
                    .map(|p| [p[0] - o[0], p[1] - o[1], p[2] - o[2]])
                    .collect(),
            }
        })
        .collect();
    SkeletonSequence {
        schema: seq.schema,
        frames,
        frame_rate: seq.frame_rate,
        provenance: seq.provenance.clone(),
    }
    .with_step("center")
}

/// Mirror index without repeating the edge sample (`d c b | a b c d`).
fn reflect(i: isize, n: usize) -> usize {
    if n == 1 {
        return 0;
    }
    let period = 2 * (n as isize - 1);
    let m = i.rem_euclid(period);
    if m >= n as isize {
        (period - m) as usize
    } else {
        m as usize
    }
}

/// Convolves one scalar channel with `kernel` using reflect padding.
pub fn smooth_channel(values: &[f64], kernel: &[f64]) -> Vec<f64> {
    let n = values.len();
    let half = (kernel.len() / 2) as isize;
    (0..n as isize)
        .map(|t| {
            kernel
                .iter()
                .enumerate()
                .map(|(k, w)| w * values[reflect(t + k as isize - half, n)])
                .sum()
        })
        .collect()
}

/// Filters every (joint, axis) channel along time.
pub fn gaussian_smooth(seq: &SkeletonSequence, cfg: &PreprocessConfig) -> Result<SkeletonSequence> {
    if cfg.gaussian_kernel.len() != cfg.gaussian_window {
        return Err(Error::InvalidConfig(format!(
            "gaussian kernel has {} weights but the window is {}",
            cfg.gaussian_kernel.len(),
            cfg.gaussian_window
        )));
    }
    if seq.is_empty() {
        return Err(Error::Empty("gaussian_smooth needs at least one frame"));
    }
    let mut out = seq.clone();
    let joints = seq.joint_count();
    let mut channel = vec![0.0; seq.len()];
    for j in 0..joints {
        for axis in 0..3 {
            for (t, f) in seq.frames.iter().enumerate() {
                channel[t] = f.positions[j][axis];
            }
            let smoothed = smooth_channel(&channel, &cfg.gaussian_kernel);
            for (t, v) in smoothed.into_iter().enumerate() {
                out.frames[t].positions[j][axis] = v;
            }
        }
    }
    Ok(out.with_step(format!("smooth:{}", cfg.gaussian_window)))
}

fn mean(points: &[Point]) -> Point {
    let n = points.len() as f64;
    let mut acc = [0.0; 3];
    for p in points {
        for a in 0..3 {
            acc[a] += p[a];
        }
    }
    [acc[0] / n, acc[1] / n, acc[2] / n]
}

/// Collapses the hands (wrist, hand, hand tip, thumb) and feet (ankle, foot)
/// into their mean joints, producing a Simplified17 sequence.
pub fn simplify_joints(seq: &SkeletonSequence) -> Result<SkeletonSequence> {
    if seq.schema != Schema::Full25 {
        return Err(Error::SchemaMismatch {
            expected: Schema::Full25,
            actual: seq.schema,
        });
    }
    let frames = seq
        .frames
        .iter()
        .map(|f| {
            let mut groups: Vec<Vec<Point>> = vec![Vec::new(); 17];
            for (j, &p) in f.positions.iter().enumerate() {
                groups[FULL_TO_SIMPLIFIED[j]].push(p);
            }
            Frame {
                timestamp: f.timestamp,
                positions: groups
                    .iter()
                    .map(|g| if g.len() == 1 { g[0] } else { mean(g) })
                    .collect(),
            }
        })
        .collect();
    Ok(SkeletonSequence {
        schema: Schema::Simplified17,
        frames,
        frame_rate: seq.frame_rate,
        provenance: seq.provenance.clone(),
    }
    .with_step("simplify"))
}

/// SpineBase–SpineShoulder distance in the first frame.
pub fn neutral_spine_length(seq: &SkeletonSequence) -> Result<f64> {
    let first = seq
        .frames
        .first()
        .ok_or(Error::Empty("spine length needs at least one frame"))?;
    Ok(crate::skeleton::distance(
        first.positions[SPINE_BASE],
        first.positions[seq.schema.spine_shoulder()],
    ))
}

/// Divides every coordinate by the scalar spine length.
pub fn normalize_by_spine(seq: &SkeletonSequence, neutral_spine_length: f64) -> Result<SkeletonSequence> {
    if !neutral_spine_length.is_finite() || neutral_spine_length <= 0.0 {
        return Err(Error::Degenerate(format!(
            "spine length must be positive and finite, got {neutral_spine_length}"
        )));
    }
    let l = neutral_spine_length;
    Ok(seq.map_points(format!("spine_norm:{l}"), |p| [p[0] / l, p[1] / l, p[2] / l]))
}

/// Least-squares slope of `values` against their index.
fn regression_slope(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    if values.len() < 2 {
        return 0.0;
    }
    let mean_t = (n - 1.0) / 2.0;
    let mean_v = values.iter().sum::<f64>() / n;
    let (mut num, mut den) = (0.0, 0.0);
    for (t, v) in values.iter().enumerate() {
        let dt = t as f64 - mean_t;
        num += dt * (v - mean_v);
        den += dt * dt;
    }
    num / den
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ViewSplit {
    pub front: Vec<SkeletonSequence>,
    pub back: Vec<SkeletonSequence>,
}

/// Splits a camera-space recording into runs walking towards the camera
/// (SpineBase z falling, front view) and away from it (back view).
///
/// Each frame gets the sign of a local regression slope over a
/// [`MIN_VIEW_RUN`]-frame neighbourhood; runs of equal sign shorter than
/// [`MIN_VIEW_RUN`] are dropped and the rest are classified by the
/// regression slope over the whole run.
pub fn split_views(seq: &SkeletonSequence) -> ViewSplit {
    let n = seq.len();
    let mut split = ViewSplit::default();
    if n < MIN_VIEW_RUN {
        return split;
    }
    let z: Vec<f64> = seq.frames.iter().map(|f| f.positions[SPINE_BASE][2]).collect();
    let half = MIN_VIEW_RUN / 2;
    let direction: Vec<i8> = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(n);
            let s = regression_slope(&z[lo..hi]);
            if s < 0.0 {
                -1
            } else if s > 0.0 {
                1
            } else {
                0
            }
        })
        .collect();

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && direction[end] == direction[start] {
            end += 1;
        }
        if direction[start] != 0 && end - start >= MIN_VIEW_RUN {
            let slope = regression_slope(&z[start..end]);
            if slope < 0.0 {
                split.front.push(seq.slice(start..end, format!("view:front[{start}..{end})")));
            } else if slope > 0.0 {
                split.back.push(seq.slice(start..end, format!("view:back[{start}..{end})")));
            }
        }
        start = end;
    }
    split
}

/// Overlapping windows of exactly `window_frames` frames every
/// `window_stride` frames; empty when the sequence is shorter than a window.
pub fn segment_windows(seq: &SkeletonSequence, cfg: &PreprocessConfig) -> Vec<SkeletonSequence> {
    let w = cfg.window_frames;
    let stride = cfg.window_stride.max(1);
    if w == 0 || seq.len() < w {
        return Vec::new();
    }
    (0..=(seq.len() - w) / stride)
        .map(|k| {
            let start = k * stride;
            seq.slice(start..start + w, format!("window:{k}"))
        })
        .collect()
}

/// Full pipeline for one recording: front-view runs, tilt correction,
/// centering, smoothing, optional simplification and spine normalization,
/// then windowing.
pub fn preprocess_sequence(seq: &SkeletonSequence, cfg: &PreprocessConfig) -> Result<Vec<SkeletonSequence>> {
    cfg.validate()?;
    let mut windows = Vec::new();
    for run in split_views(seq).front {
        let mut s = tilt_correct(&run, cfg.camera_tilt_theta)?;
        s = center_on_spinebase(&s);
        s = gaussian_smooth(&s, cfg)?;
        if cfg.simplify {
            s = simplify_joints(&s)?;
        }
        if cfg.normalize_spine {
            let len = neutral_spine_length(&s)?;
            s = normalize_by_spine(&s, len)?;
        }
        windows.extend(segment_windows(&s, cfg));
    }
    Ok(windows)
}
