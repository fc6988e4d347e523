//! Skeleton gait augmentation toolkit.
//!
//! Preprocesses Kinect-v2 joint sequences, applies five augmentation
//! strategies (virtual-camera rotation, shear, Gaussian noise, joint mask,
//! channel mask) and measures how much of the raw data each augmentation
//! keeps via histogram mutual information. A synthetic gait generator
//! stands in for recorded data.

pub mod augment;
pub mod dataset;
pub mod error;
pub mod experiment;
pub mod groups;
pub mod io;
pub mod linalg;
pub mod mi;
pub mod preprocess;
pub mod render;
pub mod rng;
pub mod skeleton;
pub mod synth;

pub use error::{Error, Result};
pub use skeleton::{Frame, JointId, LabeledSequence, Point, Schema, SkeletonSequence, View};
