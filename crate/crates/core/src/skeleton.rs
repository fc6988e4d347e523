//! Skeleton sequences and the Kinect-v2 joint taxonomy.
//!
//! Coordinates are camera-space meters. A sequence is a list of frames, each
//! holding one `[x, y, z]` position per joint of its [`Schema`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [f64; 3];

/// Kinect-v2 joint names in sensor index order.
pub const FULL25_NAMES: [&str; 25] = [
    "SpineBase",
    "SpineMid",
    "Neck",
    "Head",
    "ShoulderLeft",
    "ElbowLeft",
    "WristLeft",
    "HandLeft",
    "ShoulderRight",
    "ElbowRight",
    "WristRight",
    "HandRight",
    "HipLeft",
    "KneeLeft",
    "AnkleLeft",
    "FootLeft",
    "HipRight",
    "KneeRight",
    "AnkleRight",
    "FootRight",
    "SpineShoulder",
    "HandTipLeft",
    "ThumbLeft",
    "HandTipRight",
    "ThumbRight",
];

/// Joint names of the simplified skeleton. The four merged joints sit where
/// WristLeft, WristRight, AnkleLeft and AnkleRight used to be.
pub const SIMPLIFIED17_NAMES: [&str; 17] = [
    "SpineBase",
    "SpineMid",
    "Neck",
    "Head",
    "ShoulderLeft",
    "ElbowLeft",
    "HandLeftMerged",
    "ShoulderRight",
    "ElbowRight",
    "HandRightMerged",
    "HipLeft",
    "KneeLeft",
    "FootLeftMerged",
    "HipRight",
    "KneeRight",
    "FootRightMerged",
    "SpineShoulder",
];

/// For each Full25 joint, the Simplified17 index it collapses into.
pub const FULL_TO_SIMPLIFIED: [usize; 25] = [
    0, 1, 2, 3, 4, 5, 6, 6, 7, 8, 9, 9, 10, 11, 12, 12, 13, 14, 15, 15, 16, 6, 6, 9, 9,
];

/// Kinect-v2 bone topology.
pub const FULL25_BONES: [(usize, usize); 24] = [
    (0, 1),
    (1, 20),
    (20, 2),
    (2, 3),
    (20, 4),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 21),
    (6, 22),
    (20, 8),
    (8, 9),
    (9, 10),
    (10, 11),
    (11, 23),
    (10, 24),
    (0, 12),
    (12, 13),
    (13, 14),
    (14, 15),
    (0, 16),
    (16, 17),
    (17, 18),
    (18, 19),
];

pub const SIMPLIFIED17_BONES: [(usize, usize); 16] = [
    (0, 1),
    (1, 16),
    (16, 2),
    (2, 3),
    (16, 4),
    (4, 5),
    (5, 6),
    (16, 7),
    (7, 8),
    (8, 9),
    (0, 10),
    (10, 11),
    (11, 12),
    (0, 13),
    (13, 14),
    (14, 15),
];

pub const SPINE_BASE: usize = 0;
pub const SPINE_SHOULDER_FULL: usize = 20;
pub const SPINE_SHOULDER_SIMPLIFIED: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Schema {
    Full25,
    Simplified17,
}

impl Schema {
    pub fn joint_count(self) -> usize {
        match self {
            Schema::Full25 => 25,
            Schema::Simplified17 => 17,
        }
    }

    pub fn joint_names(self) -> &'static [&'static str] {
        match self {
            Schema::Full25 => &FULL25_NAMES,
            Schema::Simplified17 => &SIMPLIFIED17_NAMES,
        }
    }

    pub fn bones(self) -> &'static [(usize, usize)] {
        match self {
            Schema::Full25 => &FULL25_BONES,
            Schema::Simplified17 => &SIMPLIFIED17_BONES,
        }
    }

    pub fn spine_shoulder(self) -> usize {
        match self {
            Schema::Full25 => SPINE_SHOULDER_FULL,
            Schema::Simplified17 => SPINE_SHOULDER_SIMPLIFIED,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Schema::Full25 => "Full25",
            Schema::Simplified17 => "Simplified17",
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Schema {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Full25" => Ok(Schema::Full25),
            "Simplified17" => Ok(Schema::Simplified17),
            other => Err(Error::InvalidConfig(format!("unknown schema `{other}`"))),
        }
    }
}

/// A joint index checked against its schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointId {
    schema: Schema,
    index: usize,
}

impl JointId {
    pub fn new(schema: Schema, index: usize) -> Result<Self> {
        if index >= schema.joint_count() {
            return Err(Error::JointOutOfRange { index, schema });
        }
        Ok(Self { schema, index })
    }

    pub fn index(self) -> usize {
        self.index
    }

    pub fn schema(self) -> Schema {
        self.schema
    }

    pub fn name(self) -> &'static str {
        self.schema.joint_names()[self.index]
    }

    pub fn by_name(schema: Schema, name: &str) -> Option<Self> {
        schema
            .joint_names()
            .iter()
            .position(|n| n.eq_ignore_ascii_case(name))
            .map(|index| Self { schema, index })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub timestamp: f64,
    pub positions: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonSequence {
    pub schema: Schema,
    pub frames: Vec<Frame>,
    pub frame_rate: f64,
    pub provenance: Vec<String>,
}

impl SkeletonSequence {
    pub fn new(schema: Schema, frame_rate: f64, frames: Vec<Frame>) -> Self {
        Self {
            schema,
            frames,
            frame_rate,
            provenance: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn joint_count(&self) -> usize {
        self.schema.joint_count()
    }

    /// Appends one step to the provenance chain.
    pub fn with_step(mut self, step: impl Into<String>) -> Self {
        self.provenance.push(step.into());
        self
    }

    /// Applies `f` to every position and records `step` in the provenance.
    pub fn map_points(&self, step: impl Into<String>, mut f: impl FnMut(Point) -> Point) -> Self {
        let frames = self
            .frames
            .iter()
            .map(|frame| Frame {
                timestamp: frame.timestamp,
                positions: frame.positions.iter().map(|&p| f(p)).collect(),
            })
            .collect();
        Self {
            schema: self.schema,
            frames,
            frame_rate: self.frame_rate,
            provenance: self.provenance.clone(),
        }
        .with_step(step)
    }

    pub fn timestamps(&self) -> Vec<f64> {
        self.frames.iter().map(|f| f.timestamp).collect()
    }

    /// Frame-major, joint-major, axis-major flattening.
    pub fn flatten(&self) -> Vec<f64> {
        self.frames
            .iter()
            .flat_map(|f| f.positions.iter().flat_map(|p| p.iter().copied()))
            .collect()
    }

    /// Copy of the frames in `range`, keeping their original timestamps.
    pub fn slice(&self, range: std::ops::Range<usize>, step: impl Into<String>) -> Self {
        Self {
            schema: self.schema,
            frames: self.frames[range].to_vec(),
            frame_rate: self.frame_rate,
            provenance: self.provenance.clone(),
        }
        .with_step(step)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum View {
    Front,
    Back,
    #[default]
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSequence {
    pub sequence: SkeletonSequence,
    pub subject_id: String,
    pub label: String,
    pub view: View,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonFinite {
        frame: usize,
        joint: usize,
        axis: usize,
    },
    NonMonotone {
        frame: usize,
    },
    SchemaMismatch {
        frame: usize,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite { frame, joint, axis } => write!(
                f,
                "frame {frame}: joint {joint} axis {} is not finite",
                ["x", "y", "z"][*axis]
            ),
            Violation::NonMonotone { frame } => {
                write!(f, "frame {frame}: timestamp does not increase")
            }
            Violation::SchemaMismatch {
                frame,
                expected,
                found,
            } => write!(f, "frame {frame}: expected {expected} joints, found {found}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_sequence(seq: &SkeletonSequence) -> ValidationReport {
    let expected = seq.schema.joint_count();
    let mut violations = Vec::new();
    for (i, frame) in seq.frames.iter().enumerate() {
        if frame.positions.len() != expected {
            violations.push(Violation::SchemaMismatch {
                frame: i,
                expected,
                found: frame.positions.len(),
            });
        }
        if !frame.timestamp.is_finite() || (i > 0 && frame.timestamp <= seq.frames[i - 1].timestamp) {
            violations.push(Violation::NonMonotone { frame: i });
        }
        for (j, p) in frame.positions.iter().enumerate() {
            for (axis, v) in p.iter().enumerate() {
                if !v.is_finite() {
                    violations.push(Violation::NonFinite { frame: i, joint: j, axis });
                }
            }
        }
    }
    ValidationReport { violations }
}

pub fn distance(a: Point, b: Point) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Per-frame bone lengths, `[frame][bone]`.
pub fn bone_lengths(seq: &SkeletonSequence) -> Vec<Vec<f64>> {
    let bones = seq.schema.bones();
    seq.frames
        .iter()
        .map(|f| {
            bones
                .iter()
                .map(|&(a, b)| distance(f.positions[a], f.positions[b]))
                .collect()
        })
        .collect()
}

/// Frames in which some bone length deviates from that bone's sequence
/// median by more than `tolerance` (relative).
pub fn deformed_frames(seq: &SkeletonSequence, tolerance: f64) -> Vec<usize> {
    let lengths = bone_lengths(seq);
    if lengths.is_empty() {
        return Vec::new();
    }
    let bone_count = seq.schema.bones().len();
    let medians: Vec<f64> = (0..bone_count)
        .map(|b| {
            let mut col: Vec<f64> = lengths.iter().map(|row| row[b]).collect();
            col.sort_by(f64::total_cmp);
            let n = col.len();
            if n % 2 == 1 {
                col[n / 2]
            } else {
                0.5 * (col[n / 2 - 1] + col[n / 2])
            }
        })
        .collect();
    lengths
        .iter()
        .enumerate()
        .filter(|(_, row)| {
            row.iter()
                .zip(&medians)
                .any(|(&len, &med)| (len - med).abs() > tolerance * med)
        })
        .map(|(i, _)| i)
        .collect()
}

/// Relative tolerance used when rejecting deformed limbs.
pub const DEFORMATION_TOLERANCE: f64 = 0.5;

#[cfg(test)]
mod tests {
    use super::*;

    fn seq_with(timestamps: &[f64], schema: Schema) -> SkeletonSequence {
        let frames = timestamps
            .iter()
            .map(|&t| Frame {
                timestamp: t,
                positions: vec![[0.0, 1.0, 2.0]; schema.joint_count()],
            })
            .collect();
        SkeletonSequence::new(schema, 30.0, frames)
    }

    #[test]
    fn well_formed_sequence_has_no_violations() {
        let ts: Vec<f64> = (0..100).map(|i| i as f64 / 30.0).collect();
        let seq = seq_with(&ts, Schema::Full25);
        assert!(validate_sequence(&seq).is_ok());
    }

    #[test]
    fn nan_coordinate_is_reported_with_frame_and_joint() {
        let mut seq = seq_with(&[0.0, 0.1, 0.2], Schema::Full25);
        seq.frames[1].positions[7][0] = f64::NAN;
        let report = validate_sequence(&seq);
        assert_eq!(
            report.violations,
            vec![Violation::NonFinite {
                frame: 1,
                joint: 7,
                axis: 0
            }]
        );
    }

    #[test]
    fn timestamp_regression_is_reported_at_frame_two() {
        let seq = seq_with(&[0.0, 0.5, 0.4], Schema::Full25);
        assert_eq!(
            validate_sequence(&seq).violations,
            vec![Violation::NonMonotone { frame: 2 }]
        );
    }

    #[test]
    fn wrong_joint_count_is_a_schema_mismatch() {
        let mut seq = seq_with(&[0.0, 0.1], Schema::Simplified17);
        seq.frames[0].positions.push([0.0; 3]);
        assert_eq!(
            validate_sequence(&seq).violations,
            vec![Violation::SchemaMismatch {
                frame: 0,
                expected: 17,
                found: 18
            }]
        );
    }

    #[test]
    fn validation_is_pure() {
        let mut seq = seq_with(&[0.0, 0.5, 0.4], Schema::Full25);
        seq.frames[0].positions[0][2] = f64::INFINITY;
        let before = seq.clone();
        assert_eq!(validate_sequence(&seq), validate_sequence(&seq));
        assert_eq!(seq, before);
    }

    #[test]
    fn bone_tables_match_schema() {
        assert_eq!(FULL25_BONES.len(), 24);
        assert_eq!(SIMPLIFIED17_BONES.len(), 16);
        for schema in [Schema::Full25, Schema::Simplified17] {
            let n = schema.joint_count();
            // a tree over n joints has n - 1 edges and reaches every joint
            let mut seen = vec![false; n];
            seen[0] = true;
            for &(a, b) in schema.bones() {
                assert!(seen[a], "{schema}: parent {a} before child {b}");
                assert!(!seen[b]);
                seen[b] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn simplification_map_is_onto_and_ordered() {
        let mut hit = [0usize; 17];
        for &s in &FULL_TO_SIMPLIFIED {
            hit[s] += 1;
        }
        assert!(hit.iter().all(|&c| c >= 1));
        assert_eq!(hit[6], 4);
        assert_eq!(hit[9], 4);
        assert_eq!(hit[12], 2);
        assert_eq!(hit[15], 2);
        // bones survive simplification
        for &(a, b) in &SIMPLIFIED17_BONES {
            assert!(FULL25_BONES
                .iter()
                .any(|&(fa, fb)| FULL_TO_SIMPLIFIED[fa] == a && FULL_TO_SIMPLIFIED[fb] == b));
        }
    }

    #[test]
    fn joint_lookup() {
        let head = JointId::by_name(Schema::Full25, "head").unwrap();
        assert_eq!(head.index(), 3);
        assert_eq!(JointId::new(Schema::Full25, 24).unwrap().name(), "ThumbRight");
        assert!(JointId::new(Schema::Simplified17, 17).is_err());
    }

    #[test]
    fn stretched_bone_is_flagged() {
        let ts: Vec<f64> = (0..5).map(|i| i as f64).collect();
        let mut seq = seq_with(&ts, Schema::Simplified17);
        for f in &mut seq.frames {
            for (j, p) in f.positions.iter_mut().enumerate() {
                *p = [j as f64 * 0.1, 0.0, 0.0];
            }
        }
        assert!(deformed_frames(&seq, DEFORMATION_TOLERANCE).is_empty());
        seq.frames[3].positions[3] = [5.0, 0.0, 0.0];
        assert_eq!(deformed_frames(&seq, DEFORMATION_TOLERANCE), vec![3]);
    }
}
